#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "anosov/cycles.hpp"
#include "anosov/develop.hpp"
#include "anosov/geometric_type.hpp"

// Interchange formats. All indices 1-based; no floating point anywhere in the
// canonical formats. Exact values serialize as lists of "num/den" coefficient
// strings of polynomials in lambda.

namespace anosov {

nlohmann::json toJson(const GeometricType& g);
GeometricType geometricTypeFromJson(const nlohmann::json& j);  // InputError on bad data

nlohmann::json toJson(const AbstractPath& p);
AbstractPath abstractPathFromJson(const nlohmann::json& j);

nlohmann::json toJson(const GeometricTypeWithCycles& gc);
GeometricTypeWithCycles invariantFromJson(const nlohmann::json& j);

nlohmann::json toJson(const AlgebraicReal& v);
nlohmann::json patchToJson(const DevelopedPatch& p);
std::string patchToSvg(const DevelopedPatch& p, int precision);

GeometricType loadGeometricType(const std::string& path);
GeometricTypeWithCycles loadInvariant(const std::string& path);

}  // namespace anosov
