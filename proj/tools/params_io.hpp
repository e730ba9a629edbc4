#pragma once

// JSON <-> parameter structs. Complex numbers are [re, im] pairs, infinite
// separated parameters are the string "inf".

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "pointint/dirac.hpp"
#include "pointint/params.hpp"
#include "pointint/parity.hpp"
#include "pointint/regularization.hpp"
#include "pointint/schrodinger.hpp"

namespace pointint::cli {

using nlohmann::json;

/// A document is relativistic when it carries "mass".
bool is_dirac(const json& doc);

/// `form_override` replaces the document's "form" field when set. Without
/// either, the form is inferred from the keys present.
InteractionParams parse_params(const json& doc, const std::optional<std::string>& form_override);

struct DiracInput {
  dirac::DiracParams params;
  double mass = 1.0;
};

DiracInput parse_dirac(const json& doc, const std::optional<std::string>& form_override);

json to_json(Complex z);
json to_json(ExtendedReal x);
json to_json(const InteractionParams& params);
json to_json(const dirac::DiracParams& params);
json to_json(const ScatteringResult& result);
json to_json(const regularization::LimitReport& report);

}  // namespace pointint::cli
