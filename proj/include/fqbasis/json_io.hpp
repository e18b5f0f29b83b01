#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

#include "fqbasis/field.hpp"
#include "fqbasis/subset.hpp"

namespace fqbasis {

// {p, m, modulus: [c0..cm]}
nlohmann::json field_to_json(const FieldSpec& spec);
// Rebuilds the canonical field for (p, m) and checks the modulus matches.
FieldPtr field_from_json(const nlohmann::json& j);

// Sorted ascending array of canonical indices.
nlohmann::json subset_to_json(const FqSubset& s);
FqSubset subset_from_json(const FieldPtr& field, const nlohmann::json& j);

// Comma-separated indices, e.g. "0,1,3"; the empty string is the empty set.
// Throws PreconditionError on malformed input or indices >= q.
FqSubset parse_set_literal(const FieldPtr& field, std::string_view text);
std::string format_set_literal(const FqSubset& s);

}  // namespace fqbasis
