#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "qspectral/qmatrix.hpp"
#include "qspectral/quaternion.hpp"

namespace qspectral {

using Json = nlohmann::json;

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Serializes with every floating point number rendered at 17 significant
/// digits, so identical inputs produce byte identical reports.
std::string dump_json(const Json& value, int indent = 2);

Json to_json(const Quaternion& q);       // [w, x, y, z]
Json to_json(const QVector& x);          // array of 4-arrays
Json to_json(const QMatrix& a);          // row-major array of arrays

Quaternion quaternion_from_json(const Json& value);
QVector qvector_from_json(const Json& value);
QMatrix qmatrix_from_json(const Json& value);

}  // namespace qspectral
