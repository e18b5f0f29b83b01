#include "fqbasis/json_io.hpp"

#include <charconv>
#include <string>

#include "fqbasis/errors.hpp"

namespace fqbasis {

nlohmann::json field_to_json(const FieldSpec& spec) {
  return {{"p", spec.p}, {"m", spec.m}, {"modulus", spec.modulus}};
}

FieldPtr field_from_json(const nlohmann::json& j) {
  try {
    auto field = make_field(j.at("p").get<std::uint32_t>(), j.at("m").get<std::uint32_t>());
    if (j.contains("modulus") && j.at("modulus").get<std::vector<std::uint32_t>>() != field->spec().modulus) {
      throw PreconditionError("modulus is not the canonical one for this (p, m)");
    }
    return field;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed field description: ") + e.what());
  }
}

nlohmann::json subset_to_json(const FqSubset& s) { return s.members(); }

FqSubset subset_from_json(const FieldPtr& field, const nlohmann::json& j) {
  try {
    return FqSubset::from_indices(field, j.get<std::vector<ElementIndex>>());
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed set: ") + e.what());
  }
}

FqSubset parse_set_literal(const FieldPtr& field, std::string_view text) {
  FqSubset out(field);
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    ElementIndex value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      throw PreconditionError("malformed set literal: '" + std::string(text) + "'");
    }
    out.insert(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_set_literal(const FqSubset& s) {
  std::string out;
  s.for_each([&](ElementIndex x) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  });
  return out;
}

}  // namespace fqbasis
