#pragma once

// JSON file formats. Matrices are row-major arrays of decimal strings
// ("n" or "n/d"); key order is fixed so output is byte-stable.

#include "pervcalc/functors.hpp"
#include "pervcalc/perv.hpp"

#include "json.hpp"

#include <string>

namespace pervcalc {

using Json = nlohmann::ordered_json;

Json to_json(const Module& m);
Json to_json(const Matrix& m);
Json to_json(const PervObject& p);
Json to_json(const PervMorphism& t);
Json to_json(const StalkReport& s);
Json to_json(const SupportSet& s);
Json to_json(const CharacteristicCycle& cc);

/// Parsers throw InputError naming the offending field.
Module module_from_json(const Ring& ring, const Json& j, const std::string& field);
Matrix matrix_from_json(const Ring& ring, const Json& j, std::size_t rows, std::size_t cols, const std::string& field);
PervObject object_from_json(const Json& j, const std::string& field = "");
PervMorphism morphism_from_json(const Json& j);

/// Wraps nlohmann parse errors as InputError.
Json parse_json(const std::string& text);

bool is_morphism_json(const Json& j);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace pervcalc
