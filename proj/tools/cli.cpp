#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "params_io.hpp"
#include "pointint/error.hpp"

namespace pointint::cli {

namespace {

struct Config {
  std::string command;
  std::string params;
  std::string params_file;
  std::string form;
  std::optional<double> k;
  std::string side = "left";
  std::optional<double> mass;
  std::optional<double> energy;
  std::string sequence;
  std::string potential_file;
  std::string eps_schedule = "default";
  std::string k_grid = "default";
  std::string k_range;
  std::string param;
  std::string param_range;
  std::string reference = "origin";
  double strength = 1.0;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 42;
  double tolerance = 1e-10;
  std::string output = "json";
  double l0 = 1.0;
  bool allow_negative_energy = false;
};

constexpr double kRegularizeTolerance = 1e-8;

/// Raised after output is written when a residual exceeds the tolerance.
class ResidualExceeded : public Error {
 public:
  explicit ResidualExceeded(const std::string& detail)
      : Error("ResidualExceeded", ErrorClass::Numerical, detail) {}
};

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

json load_params(const Config& cfg) {
  if (!cfg.params.empty() && !cfg.params_file.empty()) {
    throw InvalidInput("give either --params or --params-file, not both");
  }
  std::string text = cfg.params;
  if (!cfg.params_file.empty()) {
    std::ifstream in(cfg.params_file);
    if (!in) throw InvalidInput("cannot open params file " + cfg.params_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  if (text.empty()) throw InvalidInput("params required (--params or --params-file)");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("params are not valid JSON: ") + e.what());
  }
}

std::optional<std::string> form_override(const Config& cfg) {
  if (cfg.form.empty()) return std::nullopt;
  return cfg.form;
}

InteractionParams nonrelativistic_params(const json& doc, const Config& cfg) {
  if (is_dirac(doc)) throw InvalidInput("params carry \"mass\"; use the dirac-* commands");
  return parse_params(doc, form_override(cfg));
}

DiracInput relativistic_params(const json& doc, const Config& cfg) {
  json copy = doc;
  if (cfg.mass) copy["mass"] = *cfg.mass;
  if (!is_dirac(copy)) throw InvalidInput("relativistic params need a \"mass\" field or --mass");
  return parse_dirac(copy, form_override(cfg));
}

Side parse_side(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw InvalidInput("--side must be left or right");
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw InvalidInput(std::string(flag) + " is required");
  return *v;
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput(std::string(flag) + ": cannot parse \"" + item + "\"");
    }
  }
  return out;
}

/// "start:stop:n" or "start:stop:n:log"; n = 0 gives an empty grid.
std::vector<double> parse_range(const std::string& text, const char* flag) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  const bool log = parts.size() == 4 && parts[3] == "log";
  if (parts.size() != 3 && !log) {
    throw InvalidInput(std::string(flag) + " expects start:stop:n[:log]");
  }
  const auto ends = parse_list(parts[0] + "," + parts[1], flag);
  long n = 0;
  try {
    n = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw InvalidInput(std::string(flag) + ": bad point count");
  }
  if (n < 0) throw InvalidInput(std::string(flag) + ": negative point count");
  if (log && (ends[0] <= 0.0 || ends[1] <= 0.0)) {
    throw InvalidInput(std::string(flag) + ": log range needs positive ends");
  }
  std::vector<double> grid;
  for (long i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    grid.push_back(log ? std::exp(std::log(ends[0]) + f * (std::log(ends[1]) - std::log(ends[0])))
                       : ends[0] + f * (ends[1] - ends[0]));
  }
  if (n > 1) grid.back() = ends[1];
  return grid;
}

void check_residual(double residual, double tolerance, const std::string& where) {
  if (!(residual <= tolerance)) {
    throw ResidualExceeded("unitarity residual " + format_number(residual) + " exceeds tolerance " +
                           format_number(tolerance) + " (" + where + ")");
  }
}

void require_json_output(const Config& cfg) {
  if (cfg.output != "json") throw InvalidInput(cfg.command + " supports --output json only");
}

json state_json(const schrodinger::BoundaryState& s) {
  return {{"psi", to_json(s.psi)}, {"dpsi", to_json(s.dpsi)}};
}

json coefficients_json(const schrodinger::InteractionCoefficients& c) {
  return {{"alpha0", to_json(c.alpha0)}, {"alpha1", to_json(c.alpha1)}};
}

int cmd_scatter(const Config& cfg, std::ostream& out) {
  const auto params = nonrelativistic_params(load_params(cfg), cfg);
  const double k = require(cfg.k, "--k");
  const auto res = schrodinger::scatter(params, k, parse_side(cfg.side), cfg.l0);
  if (cfg.output == "csv") {
    write_csv(out, {"k", "r_re", "r_im", "t_re", "t_im", "R", "T", "unitarity_residual"},
              {{format_number(k), format_number(res.r.real()), format_number(res.r.imag()),
                format_number(res.t.real()), format_number(res.t.imag()),
                format_number(res.reflection()), format_number(res.transmission()),
                format_number(res.unitarity_residual())}});
  } else {
    json doc = to_json(res);
    doc["params"] = to_json(canonical(params, cfg.l0));
    json warnings = json::array();
    if (const auto* u = std::get_if<UnitaryParams>(&params)) {
      if (auto w = conditioning_warning(*u)) warnings.push_back(*w);
    }
    doc["warnings"] = warnings;
    out << doc.dump(2) << '\n';
  }
  check_residual(res.unitarity_residual(), cfg.tolerance, "scatter");
  return kExitOk;
}

int cmd_bound(const Config& cfg, std::ostream& out) {
  const auto params = nonrelativistic_params(load_params(cfg), cfg);
  const auto states = schrodinger::bound_states(params, cfg.l0);
  if (cfg.output == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : states) {
      rows.push_back({format_number(s.energy), format_number(s.kappa), schrodinger::to_string(s.side),
                      std::to_string(s.multiplicity)});
    }
    write_csv(out, {"energy", "kappa", "side", "multiplicity"}, rows);
    return kExitOk;
  }
  json list = json::array();
  for (const auto& s : states) {
    list.push_back({{"energy", s.energy},
                    {"kappa", s.kappa},
                    {"side", schrodinger::to_string(s.side)},
                    {"multiplicity", s.multiplicity}});
  }
  out << json{{"count", states.size()}, {"states", list}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_coeffs(const Config& cfg, std::ostream& out) {
  require_json_output(cfg);
  const auto params = nonrelativistic_params(load_params(cfg), cfg);
  const double k = require(cfg.k, "--k");
  const auto res = schrodinger::scatter(params, k, parse_side(cfg.side), cfg.l0);
  const auto left = schrodinger::left_state(res);
  const auto right = schrodinger::right_state(res);
  const auto both = schrodinger::interaction_coefficients(params, left, right, cfg.l0);

  json doc{{"k", k},
           {"side", cfg.side},
           {"left_state", state_json(left)},
           {"right_state", state_json(right)},
           {"coefficients", coefficients_json(both)}};
  // alpha1 and alpha0 are the jumps of psi and psi' across the origin.
  doc["jump_residual"] = std::max(std::abs(both.alpha1 - (right.psi - left.psi)),
                                  std::abs(both.alpha0 - (right.dpsi - left.dpsi)));
  if (!std::holds_alternative<SeparatedParams>(canonical(params, cfg.l0))) {
    doc["left_data_form"] = coefficients_json(
        schrodinger::interaction_coefficients(params, left, schrodinger::CoefficientForm::LeftData, cfg.l0));
    doc["right_data_form"] = coefficients_json(schrodinger::interaction_coefficients(
        params, right, schrodinger::CoefficientForm::RightData, cfg.l0));
  }
  out << doc.dump(2) << '\n';
  return kExitOk;
}

std::vector<double> grid_or_default(const std::string& text, std::vector<double> fallback,
                                    const char* flag) {
  return text == "default" ? fallback : parse_list(text, flag);
}

int cmd_classify(const Config& cfg, std::ostream& out) {
  require_json_output(cfg);
  const json doc = load_params(cfg);
  if (is_dirac(doc) || cfg.mass) {
    const auto in = relativistic_params(doc, cfg);
    json result{{"parity", parity::to_string(dirac::classify(in.params))},
                {"nonrelativistic", to_json(dirac::to_nonrelativistic(in.params, in.mass))}};
    if (const auto* p = std::get_if<dirac::DiracLambdaParams>(&in.params)) {
      result["odd_residual"] = dirac::odd_residual(*p);
    }
    out << result.dump(2) << '\n';
    return kExitOk;
  }
  const auto params = nonrelativistic_params(doc, cfg);
  const auto grid = grid_or_default(cfg.k_grid, {0.5, 1.0, 2.0}, "--k-grid");
  const auto sym = parity::reflection_symmetry_test(params, grid, cfg.l0);
  json result{{"parity", parity::to_string(parity::classify(params))},
              {"mixed_separated", parity::is_mixed_separated(params)},
              {"k_grid", grid},
              {"max_r_asymmetry", sym.max_r_asymmetry},
              {"max_t_asymmetry", sym.max_t_asymmetry}};
  json warnings = json::array();
  if (parity::is_mixed_separated(params)) {
    warnings.push_back("one wall is Dirichlet (h = inf) and the other finite; no definite parity");
  }
  result["warnings"] = warnings;
  out << result.dump(2) << '\n';
  return kExitOk;
}

int cmd_odd_search(const Config& cfg, std::ostream& out) {
  require_json_output(cfg);
  const auto report = parity::odd_search(cfg.samples, cfg.seed);
  const auto& a = report.analytic_point;
  out << json{{"samples", report.samples},
              {"seed", report.seed},
              {"odd_candidates_found", report.odd_candidates_found},
              {"non_identity_candidates", report.non_identity_candidates},
              {"all_identity", report.all_identity},
              {"min_odd_residual", report.min_odd_residual},
              {"analytic_point",
               {{"theta", kPi / 2},
                {"z", to_json(Complex(0.0, 0.0))},
                {"w", to_json(Complex(0.0, -1.0))},
                {"odd_residual", a.odd_residual},
                {"identity_distance", a.identity_distance},
                {"lambda_is_identity", a.lambda_is_identity}}}}
             .dump(2)
      << '\n';
  return kExitOk;
}

int cmd_dirac_scatter(const Config& cfg, std::ostream& out) {
  const auto in = relativistic_params(load_params(cfg), cfg);
  const double energy = require(cfg.energy, "--energy");
  const auto res = dirac::dirac_scatter(in.params, energy, in.mass, parse_side(cfg.side),
                                        {.allow_negative_energy = cfg.allow_negative_energy});
  if (cfg.output == "csv") {
    write_csv(out, {"energy", "k", "r_re", "r_im", "t_re", "t_im", "R", "T", "unitarity_residual"},
              {{format_number(energy), format_number(res.k), format_number(res.r.real()),
                format_number(res.r.imag()), format_number(res.t.real()), format_number(res.t.imag()),
                format_number(res.reflection()), format_number(res.transmission()),
                format_number(res.unitarity_residual())}});
  } else {
    json doc = to_json(res);
    doc["energy"] = energy;
    doc["mass"] = in.mass;
    doc["params"] = to_json(in.params);
    out << doc.dump(2) << '\n';
  }
  check_residual(res.unitarity_residual(), cfg.tolerance, "dirac-scatter");
  return kExitOk;
}

int cmd_dirac_bound(const Config& cfg, std::ostream& out) {
  const auto in = relativistic_params(load_params(cfg), cfg);
  const auto states = dirac::dirac_bound_states(in.params, in.mass);
  if (cfg.output == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : states) rows.push_back({format_number(s.energy), format_number(s.kappa_r)});
    write_csv(out, {"energy", "kappa_r"}, rows);
    return kExitOk;
  }
  json list = json::array();
  for (const auto& s : states) list.push_back({{"energy", s.energy}, {"kappa_r", s.kappa_r}});
  out << json{{"mass", in.mass}, {"count", states.size()}, {"states", list}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_dirac_map(const Config& cfg, std::ostream& out) {
  require_json_output(cfg);
  const auto in = relativistic_params(load_params(cfg), cfg);
  const auto nr = dirac::to_nonrelativistic(in.params, in.mass);
  json doc{{"mass", in.mass},
           {"params", to_json(in.params)},
           {"nonrelativistic", to_json(nr)},
           {"parity", parity::to_string(parity::classify(nr))}};
  json warnings = json::array();
  if (const auto* s = std::get_if<dirac::DiracSeparatedParams>(&in.params)) {
    if (s->h_r_plus.is_infinite() || s->h_r_minus.is_infinite()) {
      warnings.push_back("h_r = inf maps to h = inf through the extended-real branch");
    }
  }
  if (cfg.energy) doc["u_reduced"] = to_json(dirac::u_reduced_params(in.params, *cfg.energy, in.mass));
  doc["warnings"] = warnings;
  out << doc.dump(2) << '\n';
  return kExitOk;
}

regularization::Reference parse_reference(const std::string& s) {
  if (s == "origin") return regularization::Reference::Origin;
  if (s == "edges") return regularization::Reference::Edges;
  throw InvalidInput("--reference must be origin or edges");
}

json transfer_json(const regularization::TransferMatrix& t) {
  return {{"entries",
           {{t.entries(0, 0), t.entries(0, 1)}, {t.entries(1, 0), t.entries(1, 1)}}},
          {"x_left", t.x_left},
          {"x_right", t.x_right},
          {"det_drift", t.det_drift}};
}

int cmd_regularize(const Config& cfg, std::ostream& out) {
  require_json_output(cfg);
  namespace reg = regularization;
  const auto reference = parse_reference(cfg.reference);
  if (!cfg.potential_file.empty()) {
    std::ifstream in(cfg.potential_file);
    if (!in) throw InvalidInput("cannot open potential file " + cfg.potential_file);
    const auto potential = reg::read_potential_csv(in);
    const double k = require(cfg.k, "--k");
    const auto t = reg::ode_transfer(potential, k);
    const auto left = reg::scatter_transfer(t, Side::Left, reference);
    const auto right = reg::scatter_transfer(t, Side::Right, reference);
    json warnings = json::array();
    if (auto w = reg::edge_warning(potential)) warnings.push_back(*w);
    out << json{{"transfer", transfer_json(t)},
                {"reference", cfg.reference},
                {"left", to_json(left)},
                {"right", to_json(right)},
                {"warnings", warnings}}
               .dump(2)
        << '\n';
    check_residual(std::max(left.unitarity_residual(), right.unitarity_residual()), cfg.tolerance,
                   "regularize");
    return kExitOk;
  }
  if (cfg.sequence.empty()) throw InvalidInput("--sequence or --potential-file is required");
  const auto eps = grid_or_default(cfg.eps_schedule, reg::default_eps_schedule(), "--eps-schedule");
  const auto grid = grid_or_default(cfg.k_grid, reg::default_k_grid(), "--k-grid");
  double k_max = *std::max_element(grid.begin(), grid.end());
  if (cfg.k) k_max = std::max(k_max, *cfg.k);
  const auto sequence = reg::named_sequence(cfg.sequence, cfg.strength, k_max);
  const auto report = reg::limit_analysis(sequence, eps, grid);

  json doc = to_json(report);
  doc["sequence"] = cfg.sequence;
  doc["strength"] = cfg.strength;
  double worst = 0.0;
  if (cfg.k) {
    json rows = json::array();
    for (double e : eps) {
      const auto res = reg::scatter_transfer(reg::transfer(sequence(e), *cfg.k), Side::Left, reference);
      worst = std::max(worst, res.unitarity_residual());
      rows.push_back({{"eps", e},
                      {"r", to_json(res.r)},
                      {"t", to_json(res.t)},
                      {"one_plus_r", std::abs(1.0 + res.r)},
                      {"abs_t", std::abs(res.t)},
                      {"unitarity_residual", res.unitarity_residual()}});
    }
    doc["k"] = *cfg.k;
    doc["reference"] = cfg.reference;
    doc["scattering"] = std::move(rows);
  }
  out << doc.dump(2) << '\n';
  // Finite-range amplitudes inherit the ODE error, so they get a looser bound.
  if (cfg.k) check_residual(worst, cfg.tolerance, "regularize");
  return kExitOk;
}

struct SweepPoint {
  double param = 0.0;
  double k = 0.0;
};

int cmd_sweep(const Config& cfg, std::ostream& out) {
  const json base = load_params(cfg);
  const bool relativistic = is_dirac(base) || cfg.mass.has_value();
  const Side side = parse_side(cfg.side);

  std::vector<std::optional<double>> params{std::nullopt};
  if (!cfg.param.empty()) {
    if (cfg.param_range.empty()) throw InvalidInput("--param needs --param-range");
    params.clear();
    for (double v : parse_range(cfg.param_range, "--param-range")) params.emplace_back(v);
  }
  std::vector<double> ks;
  if (!cfg.k_range.empty()) {
    ks = parse_range(cfg.k_range, "--k-range");
  } else if (relativistic && cfg.energy) {
    const double m = cfg.mass ? *cfg.mass : relativistic_params(base, cfg).mass;
    ks.push_back(std::sqrt(std::max(0.0, *cfg.energy * *cfg.energy - m * m)));
  } else {
    ks.push_back(require(cfg.k, "--k or --k-range"));
  }

  std::vector<SweepPoint> grid;
  for (const auto& p : params) {
    for (double k : ks) grid.push_back({p.value_or(0.0), k});
  }

  struct Outcome {
    ScatteringResult res;
    double energy = 0.0;
    std::exception_ptr error;
  };
  std::vector<Outcome> outcomes(grid.size());
  auto evaluate = [&](std::size_t i) {
    try {
      json doc = base;
      if (!cfg.param.empty()) doc[cfg.param] = grid[i].param;
      if (relativistic) {
        const auto in = relativistic_params(doc, cfg);
        const double energy = std::sqrt(grid[i].k * grid[i].k + in.mass * in.mass);
        outcomes[i].energy = energy;
        outcomes[i].res = dirac::dirac_scatter(in.params, energy, in.mass, side);
      } else {
        outcomes[i].res = schrodinger::scatter(nonrelativistic_params(doc, cfg), grid[i].k, side, cfg.l0);
      }
    } catch (...) {
      outcomes[i].error = std::current_exception();
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(grid.size(), std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < grid.size(); i += workers) evaluate(i);
      });
    }
  }
  for (const auto& o : outcomes) {
    if (o.error) std::rethrow_exception(o.error);
  }

  std::vector<std::string> header;
  if (!cfg.param.empty()) header.push_back(cfg.param);
  header.push_back("k");
  if (relativistic) header.push_back("energy");
  for (const char* h : {"r_re", "r_im", "t_re", "t_im", "R", "T", "unitarity_residual"}) {
    header.push_back(h);
  }

  double worst = 0.0;
  std::vector<std::vector<std::string>> rows;
  json list = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& res = outcomes[i].res;
    worst = std::max(worst, res.unitarity_residual());
    std::vector<double> values;
    if (!cfg.param.empty()) values.push_back(grid[i].param);
    values.push_back(grid[i].k);
    if (relativistic) values.push_back(outcomes[i].energy);
    for (double v : {res.r.real(), res.r.imag(), res.t.real(), res.t.imag(), res.reflection(),
                     res.transmission(), res.unitarity_residual()}) {
      values.push_back(v);
    }
    std::vector<std::string> row;
    json obj;
    for (std::size_t c = 0; c < values.size(); ++c) {
      row.push_back(format_number(values[c]));
      obj[header[c]] = values[c];
    }
    rows.push_back(std::move(row));
    list.push_back(std::move(obj));
  }
  if (cfg.output == "csv") {
    write_csv(out, header, rows);
  } else {
    out << json{{"rows", list}}.dump(2) << '\n';
  }
  check_residual(worst, cfg.tolerance, "sweep");
  return kExitOk;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& detail) {
  err << json{{"error", {{"kind", kind}, {"detail", detail}}}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  if (const char* env = std::getenv("POINTINT_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      report_error(err, "InvalidInput", "POINTINT_SEED is not an unsigned integer");
      return kExitValidation;
    }
  }

  CLI::App app{"Point interactions in one-dimensional quantum mechanics", "pointint"};
  app.require_subcommand(1);
  app.add_option("--params", cfg.params, "Interaction parameters as inline JSON");
  app.add_option("--params-file", cfg.params_file, "Interaction parameters from a JSON file");
  app.add_option("--form", cfg.form, "Override the JSON \"form\" field");
  app.add_option("--k", cfg.k, "Wavenumber");
  app.add_option("--side", cfg.side, "Incidence side: left or right");
  app.add_option("--mass", cfg.mass, "Dirac mass (overrides the JSON \"mass\" field)");
  app.add_option("--energy", cfg.energy, "Dirac energy");
  app.add_flag("--allow-negative-energy", cfg.allow_negative_energy, "Permit E < -m in dirac-scatter");
  app.add_option("--sequence", cfg.sequence, "seba, gauss-delta, dgauss-deltaprime or rect");
  app.add_option("--potential-file", cfg.potential_file, "CSV of x,V samples");
  app.add_option("--strength", cfg.strength, "Strength of the named sequence");
  app.add_option("--eps-schedule", cfg.eps_schedule, "\"default\" or comma-separated eps values");
  app.add_option("--k-grid", cfg.k_grid, "\"default\" or comma-separated wavenumbers");
  app.add_option("--k-range", cfg.k_range, "Sweep grid start:stop:n[:log]");
  app.add_option("--param", cfg.param, "JSON field varied by the sweep");
  app.add_option("--param-range", cfg.param_range, "Values of --param, start:stop:n[:log]");
  app.add_option("--reference", cfg.reference, "Amplitude reference for regularize: origin or edges");
  app.add_option("--samples", cfg.samples, "Random samples for odd-search");
  app.add_option("--seed", cfg.seed, "RNG seed (default 42, or POINTINT_SEED)");
  auto* tolerance_opt = app.add_option(
      "--tolerance", cfg.tolerance,
      "Largest accepted unitarity residual (default 1e-10; 1e-8 for regularize, whose amplitudes "
      "carry the integration error)");
  auto* output_opt = app.add_option("--output", cfg.output, "json or csv (default json; csv for sweep)")
                         ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--l0", cfg.l0, "Length scale of the unitary representation");

  const std::pair<const char*, const char*> commands[] = {
      {"scatter", "Reflection and transmission amplitudes at --k"},
      {"bound", "Bound states (E < 0)"},
      {"coeffs", "Interaction coefficients alpha0, alpha1 from the scattering state at --k"},
      {"classify", "Parity class, with a left/right scattering symmetry check"},
      {"odd-search", "Random search for odd interactions"},
      {"dirac-scatter", "Dirac amplitudes at --energy"},
      {"dirac-bound", "Dirac gap states in (-m, m)"},
      {"dirac-map", "Nonrelativistic boundary matrix, and the u-reduction at --energy"},
      {"regularize", "Zero-range limit of a named sequence, or transfer of a sampled potential"},
      {"sweep", "Amplitudes over a k grid and an optional parameter range"},
  };
  for (const auto& [name, description] : commands) {
    app.add_subcommand(name, description)->fallthrough()->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "InvalidInput", e.what());
    return kExitValidation;
  }

  if (tolerance_opt->count() == 0 && cfg.command == "regularize") cfg.tolerance = kRegularizeTolerance;
  if (output_opt->count() == 0 && cfg.command == "sweep") cfg.output = "csv";

  try {
    if (!(cfg.tolerance >= 0.0)) throw InvalidInput("--tolerance must be non-negative");
    if (!(cfg.l0 > 0.0)) throw InvalidInput("--l0 must be positive");
    if (cfg.command == "scatter") return cmd_scatter(cfg, out);
    if (cfg.command == "bound") return cmd_bound(cfg, out);
    if (cfg.command == "coeffs") return cmd_coeffs(cfg, out);
    if (cfg.command == "classify") return cmd_classify(cfg, out);
    if (cfg.command == "odd-search") return cmd_odd_search(cfg, out);
    if (cfg.command == "dirac-scatter") return cmd_dirac_scatter(cfg, out);
    if (cfg.command == "dirac-bound") return cmd_dirac_bound(cfg, out);
    if (cfg.command == "dirac-map") return cmd_dirac_map(cfg, out);
    if (cfg.command == "regularize") return cmd_regularize(cfg, out);
    return cmd_sweep(cfg, out);
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return e.error_class() == ErrorClass::Validation ? kExitValidation : kExitNumerical;
  } catch (const json::exception& e) {
    report_error(err, "InvalidInput", e.what());
    return kExitValidation;
  }
}

}  // namespace pointint::cli
