#pragma once

#include "gwloc/action_spec.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace gwloc {

/// Parse "coeff * t^k * monomial" sums, e.g. "2t + h", "-1/2*t^2*h", "1".
RingClass parse_class_expr(const std::string& expr, const RingPtr& ring);
/// Inverse of parse_class_expr for classes whose coefficients are monomials
/// in t (the only classes the config format carries).
std::string class_expr_string(const RingClass& c);

/// Build the canonical correlator-table key for a beta_v != 0 vertex.
std::string correlator_key(const std::string& component_id, const std::vector<Rational>& beta,
                           std::vector<std::pair<std::string, int>> items);

/// Validated ActionSpec from JSON config text; SpecError carries every
/// diagnostic, naming the offending component or edge.
ActionSpec parse_action_spec(const std::string& text);

/// Config emission; parse_action_spec(dump) reproduces the spec.
nlohmann::json serialize_action_spec(const ActionSpec& spec);

// exact JSON encodings used in reports
nlohmann::json rf_to_json(const RF& f);
nlohmann::json ring_class_to_json(const RingClass& c);

}  // namespace gwloc
