#pragma once

// Finite-range oracles for point interactions: transfer matrices of delta
// arrays and of sampled short-range potentials, and a zero-range limit
// analysis that identifies which family member a sequence converges to.
//
// Transfer matrices act on (psi, psi') for psi'' + k^2 psi = V psi.

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "pointint/params.hpp"
#include "pointint/parity.hpp"
#include "pointint/scattering.hpp"

namespace pointint::regularization {

struct DeltaPoint {
  double position = 0.0;
  double strength = 0.0;
};

/// Delta functions sum_i g_i delta(x - x_i) at strictly increasing positions.
class DeltaArray {
 public:
  DeltaArray() = default;
  explicit DeltaArray(std::vector<DeltaPoint> points);

  const std::vector<DeltaPoint>& points() const { return points_; }
  bool empty() const { return points_.empty(); }

 private:
  std::vector<DeltaPoint> points_;
};

/// Samples of V on a uniform mesh x_i = x_min + i dx. A node may carry a
/// distinct left limit, which marks a jump of V at that node.
class SampledPotential {
 public:
  SampledPotential(double x_min, double dx, std::vector<double> values,
                   std::vector<double> left_limits = {});

  /// Samples f on [-half_width, half_width] with `intervals` mesh cells;
  /// left limits are taken one ulp below each node.
  static SampledPotential from_function(const std::function<double(double)>& f,
                                        double half_width, int intervals);

  double x_min() const { return x_min_; }
  double x_max() const { return x_min_ + dx_ * static_cast<double>(values_.size() - 1); }
  double spacing() const { return dx_; }
  std::size_t size() const { return values_.size(); }
  double x(std::size_t i) const { return x_min_ + dx_ * static_cast<double>(i); }
  /// V at node i, or its right limit at a jump.
  double value(std::size_t i) const { return values_[i]; }
  double left_limit(std::size_t i) const { return left_limits_[i]; }
  double max_abs() const;

 private:
  double x_min_;
  double dx_;
  std::vector<double> values_;
  std::vector<double> left_limits_;
};

/// Reads "x,V" rows (header optional). A repeated x marks a jump: the first
/// row is the left limit, the second the right limit.
SampledPotential read_potential_csv(std::istream& in);

/// Non-empty when V at the mesh edges is not negligible next to max |V|.
std::optional<std::string> edge_warning(const SampledPotential& potential);

using Regularized = std::variant<DeltaArray, SampledPotential>;

struct TransferMatrix {
  Eigen::Matrix2d entries = Eigen::Matrix2d::Identity();
  double k = 0.0;
  /// (psi, psi')(x_right) = entries * (psi, psi')(x_left)
  double x_left = 0.0;
  double x_right = 0.0;
  /// det(entries) - 1, reported rather than corrected.
  double det_drift = 0.0;
};

/// Free propagation over `length` (may be negative).
TransferMatrix free_transfer(double length, double k, double x_left = 0.0);

/// Product of point matrices [[1, 0], [g, 1]] and free gaps; maps the data
/// just left of the first delta to just right of the last one.
TransferMatrix delta_array_transfer(const DeltaArray& array, double k);

/// Fourth-order Runge-Kutta across the mesh with step 2 dx (odd-indexed nodes
/// serve as midpoints). Throws StepTooCoarse if the per-step error estimate
/// (h sqrt|V - k^2|)^5 / 120 exceeds 1e-6.
TransferMatrix ode_transfer(const SampledPotential& potential, double k);

TransferMatrix transfer(const Regularized& regularized, double k);

/// later * earlier; the intervals must abut.
TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier);

/// Phase reference for amplitudes read off a finite-range transfer matrix.
enum class Reference {
  /// Incident and outgoing waves referenced at x_left / x_right.
  Edges,
  /// Free propagation to the support edges stripped off: amplitudes of the
  /// equivalent point interaction at x = 0.
  Origin,
};

/// Boundary matrix of the equivalent point interaction in the given reference.
BoundaryMatrix effective_lambda(const TransferMatrix& transfer, Reference reference);

ScatteringResult scatter_transfer(const TransferMatrix& transfer, Side side, Reference reference);

/// log(e_i / e_{i+1}) / log(eps_i / eps_{i+1}) for each consecutive pair.
std::vector<double> empirical_orders(std::span<const double> eps, std::span<const double> errors);

// Named regularization sequences, indexed by the width parameter eps.

/// {(-eps, s / 2eps), (+eps, -s / 2eps)}
DeltaArray seba_pair(double eps, double strength = 1.0);

/// gamma / sqrt(2 pi) sigma exp(-x^2 / 2 sigma^2) on [-10 sigma, 10 sigma].
SampledPotential gaussian_delta(double sigma, double gamma, double k_max = 1.0);

/// strength * d/dx of the normalised Gaussian (converges to strength * delta').
SampledPotential gaussian_delta_prime(double sigma, double strength = 1.0, double k_max = 1.0);

/// Height `height` on [-width/2, width/2], zero elsewhere in [-half_width, half_width].
SampledPotential rectangular_barrier(double height, double width, double half_width,
                                     int intervals);

/// gamma / 2eps on [-eps, eps].
SampledPotential rectangular_delta(double eps, double gamma, double k_max = 1.0);

using SequenceGenerator = std::function<Regularized(double eps)>;

/// "seba", "gauss-delta", "dgauss-deltaprime" or "rect". Throws InvalidInput
/// for other names.
SequenceGenerator named_sequence(const std::string& name, double strength, double k_max);

std::vector<double> default_eps_schedule();
std::vector<double> default_k_grid();

struct LimitOptions {
  /// Largest allowed spread of fitted parameters across the k grid.
  double k_variation_tol = 1e-4;
  /// Transmission below this at the smallest eps selects the separated form.
  double separated_transmission = 1e-6;
  /// Otherwise |t| must fall with at least this order over the last three eps.
  double min_transmission_order = 0.5;
  /// |1/h| of the extrapolated limit below this reads as h = inf.
  double infinity_threshold = 1e-6;
  /// Successive-eps distances must shrink by at least this factor to count
  /// as Cauchy (distances below 1e-12 always do).
  double cauchy_contraction = 0.5;
};

struct EpsilonEvidence {
  double eps = 0.0;
  /// Least-squares lambda fit over the k grid, projected to ad - bc = 1.
  LambdaParams fitted;
  double k_variation = 0.0;
  double imag_residual = 0.0;
  double max_transmission = 0.0;
  /// atan(h+-) of the wall read from the reflection amplitudes, mod pi.
  double wall_angle_plus = 0.0;
  double wall_angle_minus = 0.0;
  double wall_angle_k_variation = 0.0;
};

struct LimitReport {
  bool converged = false;
  std::optional<InteractionParams> limit;
  std::optional<parity::ParityClass> parity;
  std::vector<EpsilonEvidence> evidence;
  /// Fitted order of max |t| over the last three eps (0 when undefined).
  double transmission_order = 0.0;
  std::string diagnostics;
};

/// Requires a strictly decreasing eps schedule with at least four entries and
/// at least three wavenumbers.
LimitReport limit_analysis(const SequenceGenerator& sequence, std::span<const double> eps_schedule,
                           std::span<const double> k_grid, const LimitOptions& options = {});

}  // namespace pointint::regularization
