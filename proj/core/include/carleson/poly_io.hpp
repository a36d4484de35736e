#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "carleson/homo_elem.hpp"
#include "carleson/poly.hpp"

namespace carleson {

// Text format shared by all config files: terms joined by '+', each term
// "coeff * u1^a1 u2^a2 ..." with exact rational coefficient strings ("3",
// "-1/2").  The writer emits canonical lexicographic term order.
std::string poly_to_text(const Poly& p, const std::string& var_prefix = "u");
std::string poly_to_text(const Poly& p, const std::vector<std::string>& names);
Poly poly_from_text(const std::string& text, int nvars,
                    const std::string& var_prefix = "u");

// JSON map form {"(a1,...,an)": "coeff"}.
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j, int nvars);

// Default variable names u1..un, tau, s, then the supplied extras.
std::vector<std::string> homo_var_names(int n, const std::vector<std::string>& extras = {});
std::string homo_to_text(const HomoElem& e, const std::vector<std::string>& names);

// FNV-1a hash of a canonical string, hex-encoded; used for provenance lines.
std::string fnv1a_hex(const std::string& data);

}  // namespace carleson
