#pragma once

#include <json.hpp>

#include "epb/brackets.hpp"
#include "epb/schouten.hpp"

namespace epb {

using nlohmann::json;

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

/// [{"coeff": {"num": "..", "den": ".."}, "monomial": {"x0": 2, ...}}, ...]
/// in canonical ascending term order.
json mpoly_to_json(const MPoly& p);
MPoly mpoly_from_json(const json& j);

/// {"n", "parity", "alpha", "variables", "entries": [{"i","j","poly"}]}
json table_to_json(const BracketTable& t);
BracketTable table_from_json(const json& j);

json compat_report_to_json(const CompatReport& r);

/// Golden-file wrapper: the table JSON plus a schema_version field.
inline constexpr int kGoldenSchemaVersion = 1;
json golden_table_json(const BracketTable& t);

/// Parameter file: {"a0": {"num","den"}, ...}; keys must belong to the
/// parity's legal parameter set; missing parameters default to zero.
std::map<VarId, Rational> params_from_json(const json& j, Parity parity);

}  // namespace epb
