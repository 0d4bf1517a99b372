#pragma once

#include <string>

#include "json.hpp"
#include "tcurves/curves.hpp"

namespace tcurves {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

Json read_json_file(const std::string& path);

CurveFamily family_from_json(const Json& j);
Json family_to_json(const CurveFamily& fam);
CurveFamily load_family(const std::string& path);

Json to_json(const RelValue& r);
Json to_json(const ExtRat& v);
Json to_json(const Rat& v);
Rat rat_from_json(const Json& j);

// FNV-1a 64-bit digest of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace tcurves
