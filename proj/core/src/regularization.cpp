#include "pointint/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "pointint/error.hpp"
#include "pointint/schrodinger.hpp"

namespace pointint::regularization {

namespace {

constexpr Complex kI{0.0, 1.0};

constexpr double kLocalErrorLimit = 1e-6;

void require_wavenumber(double k) {
  if (!std::isfinite(k) || k <= 0.0) throw InvalidInput("wavenumber k must be positive");
}

Eigen::Matrix2d point_matrix(double strength) {
  Eigen::Matrix2d m;
  m << 1.0, 0.0, strength, 1.0;
  return m;
}

Eigen::Matrix2d free_matrix(double length, double k) {
  const double c = std::cos(k * length);
  const double s = std::sin(k * length);
  Eigen::Matrix2d m;
  m << c, s / k, -k * s, c;
  return m;
}

Eigen::Matrix2d generator(double v, double k) {
  Eigen::Matrix2d a;
  a << 0.0, 1.0, v - k * k, 0.0;
  return a;
}

// One RK4 step of Y' = A(x) Y with A sampled at start, midpoint and end.
Eigen::Matrix2d rk4_step(const Eigen::Matrix2d& y, double h, double k, double v_start,
                         double v_mid, double v_end) {
  const double worst = std::max({std::abs(v_start - k * k), std::abs(v_mid - k * k),
                                 std::abs(v_end - k * k)});
  const double estimate = std::pow(h * std::sqrt(worst), 5) / 120.0;
  if (estimate > kLocalErrorLimit) {
    throw StepTooCoarse("estimated local error " + std::to_string(estimate) +
                        " exceeds 1e-6; refine the potential mesh");
  }
  const Eigen::Matrix2d a_start = generator(v_start, k);
  const Eigen::Matrix2d a_mid = generator(v_mid, k);
  const Eigen::Matrix2d a_end = generator(v_end, k);
  const Eigen::Matrix2d k1 = a_start * y;
  const Eigen::Matrix2d k2 = a_mid * (y + 0.5 * h * k1);
  const Eigen::Matrix2d k3 = a_mid * (y + 0.5 * h * k2);
  const Eigen::Matrix2d k4 = a_end * (y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

TransferMatrix make_transfer(const Eigen::Matrix2d& m, double k, double x_left, double x_right) {
  return {m, k, x_left, x_right, m.determinant() - 1.0};
}

int even_intervals(double span, double max_spacing, int multiple) {
  const double n = std::ceil(span / max_spacing);
  const int m = static_cast<int>(std::ceil(n / multiple));
  return std::max(1, m) * multiple;
}

double circular_distance(double x, double y) {
  const double d = std::fmod(std::abs(x - y), kPi);
  return std::min(d, kPi - d);
}

// Wrap an angle difference into (-pi/2, pi/2].
double wrap_half(double d) {
  d = std::fmod(d, kPi);
  if (d > kPi / 2) d -= kPi;
  if (d <= -kPi / 2) d += kPi;
  return d;
}

// Mean of angles defined mod pi.
double circular_mean(std::span<const double> angles) {
  Complex sum = 0.0;
  for (double a : angles) sum += std::exp(2.0 * kI * a);
  return 0.5 * std::arg(sum);
}

// Projective angle atan(h) of h = numerator / denominator, in (-pi/2, pi/2].
double wall_angle(Complex numerator, Complex denominator) {
  return std::atan2((numerator * std::conj(denominator)).real(), std::norm(denominator));
}

struct KSample {
  Matrix2c lambda;
  double max_transmission = 0.0;
  double angle_plus = 0.0;
  double angle_minus = 0.0;
};

EpsilonEvidence summarize(double eps, const std::vector<KSample>& samples) {
  EpsilonEvidence ev;
  ev.eps = eps;

  std::vector<double> phases;
  for (const auto& s : samples) phases.push_back(reduce_lambda(s.lambda).params.phi);
  double phi = circular_mean(phases);
  if (phi < 0.0) phi += kPi;
  if (phi >= kPi) phi -= kPi;

  std::vector<Eigen::Matrix2d> forms;
  Eigen::Matrix2d mean = Eigen::Matrix2d::Zero();
  for (const auto& s : samples) {
    const Matrix2c rotated = std::exp(-kI * phi) * s.lambda;
    ev.imag_residual = std::max(ev.imag_residual, rotated.imag().cwiseAbs().maxCoeff());
    forms.push_back(rotated.real());
    mean += rotated.real();
    ev.max_transmission = std::max(ev.max_transmission, s.max_transmission);
  }
  mean /= static_cast<double>(samples.size());
  const double det = mean.determinant();
  if (det > 0.0) mean /= std::sqrt(det);

  ev.fitted = {.phi = phi, .a = mean(0, 0), .b = mean(0, 1), .c = mean(1, 0), .d = mean(1, 1)};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ev.k_variation = std::max({ev.k_variation, circular_distance(phases[i], phi),
                               (forms[i] - mean).cwiseAbs().maxCoeff()});
  }

  std::vector<double> plus;
  std::vector<double> minus;
  for (const auto& s : samples) {
    plus.push_back(s.angle_plus);
    minus.push_back(s.angle_minus);
  }
  ev.wall_angle_plus = circular_mean(plus);
  ev.wall_angle_minus = circular_mean(minus);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ev.wall_angle_k_variation =
        std::max({ev.wall_angle_k_variation, circular_distance(plus[i], ev.wall_angle_plus),
                  circular_distance(minus[i], ev.wall_angle_minus)});
  }
  return ev;
}

// Aitken extrapolation of three angles (mod pi) toward eps -> 0.
double extrapolate_angle(double a0, double a1, double a2) {
  const double x0 = wrap_half(a0 - a2);
  const double x1 = wrap_half(a1 - a2);
  const double d2 = -x1;
  const double d1 = x1 - x0;
  if (std::abs(d2) < 1e-14 || std::abs(d2 - d1) < 1e-300) return a2;
  const double correction = -d2 * d2 / (d2 - d1);
  if (std::abs(correction) > std::abs(d1)) return a2;
  return a2 + correction;
}

ExtendedReal angle_to_h(double angle, double infinity_threshold) {
  const double cot = std::cos(angle) / std::sin(angle);
  if (!std::isfinite(cot) || std::abs(cot) < infinity_threshold) return ExtendedReal::infinity();
  return std::tan(angle);
}

double max_entry(const LambdaParams& p) {
  return std::max({std::abs(p.a), std::abs(p.b), std::abs(p.c), std::abs(p.d)});
}

bool cauchy(double d_earlier, double d_later, double contraction) {
  return d_later < contraction * d_earlier || d_later < 1e-12;
}

}  // namespace

DeltaArray::DeltaArray(std::vector<DeltaPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].position) || !std::isfinite(points_[i].strength)) {
      throw InvalidInput("delta array entries must be finite");
    }
    if (i > 0 && !(points_[i].position > points_[i - 1].position)) {
      throw InvalidInput("delta positions must be strictly increasing");
    }
  }
}

SampledPotential::SampledPotential(double x_min, double dx, std::vector<double> values,
                                   std::vector<double> left_limits)
    : x_min_(x_min), dx_(dx), values_(std::move(values)), left_limits_(std::move(left_limits)) {
  if (!std::isfinite(x_min_) || !std::isfinite(dx_) || dx_ <= 0.0) {
    throw InvalidInput("potential mesh spacing must be positive");
  }
  if (values_.size() < 2) throw InvalidInput("potential needs at least two samples");
  if (left_limits_.empty()) left_limits_ = values_;
  if (left_limits_.size() != values_.size()) {
    throw InvalidInput("left limits and values differ in length");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || !std::isfinite(left_limits_[i])) {
      throw InvalidInput("potential samples must be finite");
    }
  }
}

SampledPotential SampledPotential::from_function(const std::function<double(double)>& f,
                                                 double half_width, int intervals) {
  if (!(half_width > 0.0) || intervals < 1) throw InvalidInput("invalid potential mesh");
  const double dx = 2.0 * half_width / intervals;
  std::vector<double> values(intervals + 1);
  std::vector<double> left(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    const double x = -half_width + dx * i;
    values[i] = f(x);
    left[i] = f(std::nextafter(x, -std::numeric_limits<double>::infinity()));
  }
  return SampledPotential(-half_width, dx, std::move(values), std::move(left));
}

double SampledPotential::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    m = std::max({m, std::abs(values_[i]), std::abs(left_limits_[i])});
  }
  return m;
}

SampledPotential read_potential_csv(std::istream& in) {
  std::vector<double> xs;
  std::vector<double> vs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0.0;
    double v = 0.0;
    if (!(row >> x >> v)) {
      if (first) {
        first = false;
        continue;
      }
      throw InvalidInput("malformed potential row: " + line);
    }
    first = false;
    xs.push_back(x);
    vs.push_back(v);
  }

  std::vector<double> nodes;
  std::vector<double> values;
  std::vector<double> left;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!nodes.empty() && xs[i] == nodes.back()) {
      if (values.back() != left.back()) throw InvalidInput("more than two rows share one x");
      values.back() = vs[i];
      continue;
    }
    nodes.push_back(xs[i]);
    values.push_back(vs[i]);
    left.push_back(vs[i]);
  }
  if (nodes.size() < 2) throw InvalidInput("potential file needs at least two distinct x values");

  const double dx = (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (std::abs(nodes[i] - nodes[i - 1] - dx) > 1e-6 * std::abs(dx)) {
      throw InvalidInput("potential mesh must be uniform and increasing");
    }
  }
  return SampledPotential(nodes.front(), dx, std::move(values), std::move(left));
}

std::optional<std::string> edge_warning(const SampledPotential& potential) {
  const double scale = potential.max_abs();
  const double edge = std::max(std::abs(potential.value(0)),
                               std::abs(potential.left_limit(potential.size() - 1)));
  if (scale > 0.0 && edge > 1e-6 * scale) {
    return "potential does not decay at the mesh edges (|V| = " + std::to_string(edge) + ")";
  }
  return std::nullopt;
}

TransferMatrix free_transfer(double length, double k, double x_left) {
  require_wavenumber(k);
  return make_transfer(free_matrix(length, k), k, x_left, x_left + length);
}

TransferMatrix delta_array_transfer(const DeltaArray& array, double k) {
  require_wavenumber(k);
  const auto& pts = array.points();
  if (pts.empty()) return make_transfer(Eigen::Matrix2d::Identity(), k, 0.0, 0.0);
  Eigen::Matrix2d m = point_matrix(pts.front().strength);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    m = point_matrix(pts[i].strength) * free_matrix(pts[i].position - pts[i - 1].position, k) * m;
  }
  return make_transfer(m, k, pts.front().position, pts.back().position);
}

TransferMatrix ode_transfer(const SampledPotential& pot, double k) {
  require_wavenumber(k);
  const std::size_t n = pot.size() - 1;
  const double dx = pot.spacing();
  Eigen::Matrix2d y = Eigen::Matrix2d::Identity();

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const double v_mid = 0.5 * (pot.value(i + 1) + pot.left_limit(i + 1));
    y = rk4_step(y, 2.0 * dx, k, pot.value(i), v_mid, pot.left_limit(i + 2));
  }
  if (i < n) {
    // Trailing odd cell: cubic midpoint from the last four nodes.
    double v_mid = 0.5 * (pot.value(n - 1) + pot.left_limit(n));
    if (n >= 3) {
      v_mid = 0.0625 * pot.value(n - 3) - 0.3125 * pot.value(n - 2) + 0.9375 * pot.value(n - 1) +
              0.3125 * pot.left_limit(n);
    }
    y = rk4_step(y, dx, k, pot.value(n - 1), v_mid, pot.left_limit(n));
  }
  return make_transfer(y, k, pot.x_min(), pot.x_max());
}

TransferMatrix transfer(const Regularized& regularized, double k) {
  if (const auto* arr = std::get_if<DeltaArray>(&regularized)) return delta_array_transfer(*arr, k);
  return ode_transfer(std::get<SampledPotential>(regularized), k);
}

TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier) {
  const double scale = std::max({1.0, std::abs(earlier.x_right), std::abs(later.x_left)});
  if (std::abs(earlier.x_right - later.x_left) > 1e-12 * scale) {
    throw InvalidInput("transfer intervals do not abut");
  }
  if (later.k != earlier.k) throw InvalidInput("transfer matrices at different k");
  return make_transfer(later.entries * earlier.entries, later.k, earlier.x_left, later.x_right);
}

BoundaryMatrix effective_lambda(const TransferMatrix& t, Reference reference) {
  Eigen::Matrix2d m = t.entries;
  if (reference == Reference::Origin) {
    m = free_matrix(-t.x_right, t.k) * m * free_matrix(t.x_left, t.k);
  }
  return {m.cast<Complex>(), MatrixKind::NonRelativistic};
}

ScatteringResult scatter_transfer(const TransferMatrix& t, Side side, Reference reference) {
  return schrodinger::scatter(effective_lambda(t, reference), t.k, side);
}

std::vector<double> empirical_orders(std::span<const double> eps, std::span<const double> errors) {
  if (eps.size() != errors.size()) throw InvalidInput("eps and error lists differ in length");
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    orders.push_back(std::log(errors[i] / errors[i + 1]) / std::log(eps[i] / eps[i + 1]));
  }
  return orders;
}

DeltaArray seba_pair(double eps, double strength) {
  if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
  return DeltaArray({{-eps, strength / (2.0 * eps)}, {eps, -strength / (2.0 * eps)}});
}

SampledPotential gaussian_delta(double sigma, double gamma, double k_max) {
  if (!(sigma > 0.0)) throw InvalidInput("sigma must be positive");
  const double half_width = 10.0 * sigma;
  const int n = even_intervals(2.0 * half_width, std::min(sigma / 20.0, 1.0 / (20.0 * k_max)), 2);
  const double norm = gamma / (std::sqrt(2.0 * kPi) * sigma);
  return SampledPotential::from_function(
      [=](double x) { return norm * std::exp(-x * x / (2.0 * sigma * sigma)); }, half_width, n);
}

SampledPotential gaussian_delta_prime(double sigma, double strength, double k_max) {
  if (!(sigma > 0.0)) throw InvalidInput("sigma must be positive");
  const double half_width = 10.0 * sigma;
  const int n = even_intervals(2.0 * half_width, std::min(sigma / 20.0, 1.0 / (20.0 * k_max)), 2);
  const double norm = strength / (std::sqrt(2.0 * kPi) * sigma);
  return SampledPotential::from_function(
      [=](double x) {
        return -norm * x / (sigma * sigma) * std::exp(-x * x / (2.0 * sigma * sigma));
      },
      half_width, n);
}

SampledPotential rectangular_barrier(double height, double width, double half_width,
                                     int intervals) {
  if (!(width > 0.0) || !(half_width > width / 2.0) || intervals < 2) {
    throw InvalidInput("invalid rectangular barrier geometry");
  }
  const double dx = 2.0 * half_width / intervals;
  const auto lo = static_cast<std::size_t>(std::lround((half_width - width / 2.0) / dx));
  const auto hi = static_cast<std::size_t>(std::lround((half_width + width / 2.0) / dx));
  std::vector<double> values(intervals + 1, 0.0);
  std::vector<double> left(intervals + 1, 0.0);
  for (std::size_t i = lo; i < hi; ++i) values[i] = height;
  for (std::size_t i = lo + 1; i <= hi; ++i) left[i] = height;
  return SampledPotential(-half_width, dx, std::move(values), std::move(left));
}

SampledPotential rectangular_delta(double eps, double gamma, double k_max) {
  if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
  const double height = gamma / (2.0 * eps);
  const double wave = std::sqrt(std::abs(height) + k_max * k_max);
  const double spacing = std::min(eps / 20.0, 1.0 / (20.0 * wave));
  // Multiples of 8 put the edges at +-eps on even (step-boundary) nodes.
  const int n = even_intervals(4.0 * eps, spacing, 8);
  return rectangular_barrier(height, 2.0 * eps, 2.0 * eps, n);
}

SequenceGenerator named_sequence(const std::string& name, double strength, double k_max) {
  if (name == "seba") {
    return [=](double eps) -> Regularized { return seba_pair(eps, strength); };
  }
  if (name == "gauss-delta") {
    return [=](double eps) -> Regularized { return gaussian_delta(eps, strength, k_max); };
  }
  if (name == "dgauss-deltaprime") {
    return [=](double eps) -> Regularized { return gaussian_delta_prime(eps, strength, k_max); };
  }
  if (name == "rect") {
    return [=](double eps) -> Regularized { return rectangular_delta(eps, strength, k_max); };
  }
  throw InvalidInput("unknown sequence '" + name +
                     "' (expected seba, gauss-delta, dgauss-deltaprime or rect)");
}

std::vector<double> default_eps_schedule() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}; }

std::vector<double> default_k_grid() { return {0.5, 1.0, 2.0}; }

LimitReport limit_analysis(const SequenceGenerator& sequence, std::span<const double> eps_schedule,
                           std::span<const double> k_grid, const LimitOptions& options) {
  if (eps_schedule.size() < 4) throw InvalidInput("eps schedule needs at least four entries");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0) || (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))) {
      throw InvalidInput("eps schedule must be positive and strictly decreasing");
    }
  }
  if (k_grid.size() < 3) throw InvalidInput("k grid needs at least three wavenumbers");
  for (double k : k_grid) require_wavenumber(k);

  LimitReport report;
  for (double eps : eps_schedule) {
    const Regularized reg = sequence(eps);
    std::vector<KSample> samples;
    for (double k : k_grid) {
      const TransferMatrix t = transfer(reg, k);
      KSample s;
      s.lambda = effective_lambda(t, Reference::Origin).entries;
      const auto left = scatter_transfer(t, Side::Left, Reference::Origin);
      const auto right = scatter_transfer(t, Side::Right, Reference::Origin);
      s.max_transmission = std::max(std::abs(left.t), std::abs(right.t));
      // Walls read from r: h- = ik(1 - r)/(1 + r), h+ = ik(r - 1)/(r + 1).
      s.angle_minus = wall_angle(kI * k * (1.0 - left.r), 1.0 + left.r);
      s.angle_plus = wall_angle(kI * k * (right.r - 1.0), right.r + 1.0);
      samples.push_back(s);
    }
    report.evidence.push_back(summarize(eps, samples));
  }

  const auto& ev = report.evidence;
  const std::size_t n = ev.size();
  const auto& e0 = ev[n - 3];
  const auto& e1 = ev[n - 2];
  const auto& e2 = ev[n - 1];

  if (e0.max_transmission > 0.0 && e2.max_transmission > 0.0) {
    report.transmission_order = std::log(e0.max_transmission / e2.max_transmission) /
                                std::log(e0.eps / e2.eps);
  }
  const bool transmission_vanishes =
      e2.max_transmission < options.separated_transmission ||
      (e0.max_transmission > e1.max_transmission && e1.max_transmission > e2.max_transmission &&
       report.transmission_order >= options.min_transmission_order &&
       max_entry(e0.fitted) < max_entry(e1.fitted) && max_entry(e1.fitted) < max_entry(e2.fitted));

  std::ostringstream diag;
  if (transmission_vanishes) {
    const bool plus_cauchy =
        cauchy(circular_distance(e0.wall_angle_plus, e1.wall_angle_plus),
               circular_distance(e1.wall_angle_plus, e2.wall_angle_plus), options.cauchy_contraction);
    const bool minus_cauchy =
        cauchy(circular_distance(e0.wall_angle_minus, e1.wall_angle_minus),
               circular_distance(e1.wall_angle_minus, e2.wall_angle_minus), options.cauchy_contraction);
    const bool k_flat = e2.wall_angle_k_variation < options.k_variation_tol;
    diag << "transmission vanishes (order " << report.transmission_order << "); ";
    if (plus_cauchy && minus_cauchy && k_flat) {
      const double plus =
          extrapolate_angle(e0.wall_angle_plus, e1.wall_angle_plus, e2.wall_angle_plus);
      const double minus =
          extrapolate_angle(e0.wall_angle_minus, e1.wall_angle_minus, e2.wall_angle_minus);
      report.limit = SeparatedParams{angle_to_h(plus, options.infinity_threshold),
                                     angle_to_h(minus, options.infinity_threshold)};
      report.converged = true;
      diag << "separated walls converge";
    } else {
      diag << "wall parameters do not converge (cauchy+ " << plus_cauchy << ", cauchy- "
           << minus_cauchy << ", k-variation " << e2.wall_angle_k_variation << ")";
    }
  } else {
    const bool k_flat = e2.k_variation < options.k_variation_tol;
    const bool is_cauchy = cauchy(distance(e0.fitted, e1.fitted), distance(e1.fitted, e2.fitted),
                                 options.cauchy_contraction);
    if (k_flat && is_cauchy) {
      report.limit = e2.fitted;
      report.converged = true;
      diag << "boundary matrix converges";
    } else {
      diag << "boundary matrix does not converge (k-variation " << e2.k_variation
           << ", successive distances " << distance(e0.fitted, e1.fitted) << ", "
           << distance(e1.fitted, e2.fitted) << ")";
    }
  }
  if (report.limit) report.parity = parity::classify(*report.limit);
  report.diagnostics = diag.str();
  return report;
}

}  // namespace pointint::regularization
