#include "params_io.hpp"

#include <cmath>
#include <limits>

#include "pointint/error.hpp"

namespace pointint::cli {

namespace {

const json& field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw InvalidInput(std::string("missing field \"") + name + "\"");
  return doc.at(name);
}

double real_value(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number()) throw InvalidInput(std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

double real_or(const json& doc, const char* name, double fallback) {
  return doc.contains(name) ? real_value(doc, name) : fallback;
}

ExtendedReal extended_value(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "-inf" || s == "infinity") return ExtendedReal::infinity();
  }
  throw InvalidInput(std::string("field \"") + name + "\" must be a number or \"inf\"");
}

Complex complex_value(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InvalidInput(std::string("field \"") + name + "\" must be [re, im]");
}

std::string resolve_form(const json& doc, const std::optional<std::string>& form_override,
                         bool relativistic) {
  if (!doc.is_object()) throw InvalidInput("params must be a JSON object");
  if (form_override) return *form_override;
  if (doc.contains("form")) {
    if (!doc["form"].is_string()) throw InvalidInput("\"form\" must be a string");
    return doc["form"].get<std::string>();
  }
  if (relativistic) return doc.contains("h_r_plus") || doc.contains("h_r_minus") ? "separated" : "lambda";
  if (doc.contains("theta")) return "unitary";
  if (doc.contains("h_plus") || doc.contains("h_minus")) return "separated";
  return "lambda";
}

}  // namespace

bool is_dirac(const json& doc) { return doc.is_object() && doc.contains("mass"); }

InteractionParams parse_params(const json& doc, const std::optional<std::string>& form_override) {
  const std::string form = resolve_form(doc, form_override, false);
  InteractionParams params;
  if (form == "lambda") {
    params = LambdaParams{.phi = real_or(doc, "phi", 0.0),
                          .a = real_value(doc, "a"),
                          .b = real_value(doc, "b"),
                          .c = real_value(doc, "c"),
                          .d = real_value(doc, "d")};
  } else if (form == "unitary") {
    params = UnitaryParams{real_value(doc, "theta"), complex_value(doc, "z"), complex_value(doc, "w")};
  } else if (form == "separated") {
    params = SeparatedParams{extended_value(doc, "h_plus"), extended_value(doc, "h_minus")};
  } else {
    throw InvalidInput("unknown form \"" + form + "\" (expected lambda, unitary or separated)");
  }
  validate(params);
  return params;
}

DiracInput parse_dirac(const json& doc, const std::optional<std::string>& form_override) {
  const std::string form = resolve_form(doc, form_override, true);
  DiracInput in;
  in.mass = real_value(doc, "mass");
  if (!(in.mass > 0.0) || !std::isfinite(in.mass)) throw InvalidInput("mass must be positive");
  if (form == "lambda") {
    in.params = dirac::DiracLambdaParams{real_or(doc, "phi_r", 0.0), real_value(doc, "a_r"),
                                         real_value(doc, "b_r"), real_value(doc, "c_r"),
                                         real_value(doc, "d_r")};
  } else if (form == "separated") {
    in.params =
        dirac::DiracSeparatedParams{extended_value(doc, "h_r_plus"), extended_value(doc, "h_r_minus")};
  } else {
    throw InvalidInput("unknown relativistic form \"" + form + "\" (expected lambda or separated)");
  }
  dirac::validate(in.params);
  return in;
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(ExtendedReal x) {
  if (x.is_infinite()) return "inf";
  return x.value();
}

json to_json(const InteractionParams& params) {
  if (const auto* u = std::get_if<UnitaryParams>(&params)) {
    return {{"form", "unitary"}, {"theta", u->theta}, {"z", to_json(u->z)}, {"w", to_json(u->w)}};
  }
  if (const auto* p = std::get_if<LambdaParams>(&params)) {
    return {{"form", "lambda"}, {"phi", p->phi}, {"a", p->a}, {"b", p->b}, {"c", p->c}, {"d", p->d}};
  }
  const auto& s = std::get<SeparatedParams>(params);
  return {{"form", "separated"}, {"h_plus", to_json(s.h_plus)}, {"h_minus", to_json(s.h_minus)}};
}

json to_json(const dirac::DiracParams& params) {
  if (const auto* p = std::get_if<dirac::DiracLambdaParams>(&params)) {
    return {{"form", "lambda"}, {"phi_r", p->phi_r}, {"a_r", p->a_r},
            {"b_r", p->b_r},    {"c_r", p->c_r},     {"d_r", p->d_r}};
  }
  const auto& s = std::get<dirac::DiracSeparatedParams>(params);
  return {{"form", "separated"}, {"h_r_plus", to_json(s.h_r_plus)}, {"h_r_minus", to_json(s.h_r_minus)}};
}

json to_json(const ScatteringResult& res) {
  return {{"k", res.k},
          {"side", to_string(res.side)},
          {"r", to_json(res.r)},
          {"t", to_json(res.t)},
          {"R", res.reflection()},
          {"T", res.transmission()},
          {"unitarity_residual", res.unitarity_residual()},
          {"current_in", res.current_in},
          {"current_out", res.current_out}};
}

json to_json(const regularization::LimitReport& report) {
  json out;
  out["converged"] = report.converged;
  out["status"] = report.converged ? "converged" : "non-convergent";
  out["limit"] = report.limit ? to_json(*report.limit) : json(nullptr);
  out["parity"] = report.parity ? json(parity::to_string(*report.parity)) : json(nullptr);
  out["mixed_separated"] = report.limit && parity::is_mixed_separated(*report.limit);
  out["transmission_order"] = report.transmission_order;
  out["diagnostics"] = report.diagnostics;
  json evidence = json::array();
  for (const auto& ev : report.evidence) {
    evidence.push_back({{"eps", ev.eps},
                        {"fitted", to_json(InteractionParams(ev.fitted))},
                        {"k_variation", ev.k_variation},
                        {"imag_residual", ev.imag_residual},
                        {"max_transmission", ev.max_transmission},
                        {"wall_angle_plus", ev.wall_angle_plus},
                        {"wall_angle_minus", ev.wall_angle_minus},
                        {"wall_angle_k_variation", ev.wall_angle_k_variation}});
  }
  out["evidence"] = std::move(evidence);
  return out;
}

}  // namespace pointint::cli
