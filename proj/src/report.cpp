#include "qspectral/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qspectral {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump_rec(const Json& value, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) { out += "{}"; return; }
      out += "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + Json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) { out += "[]"; return; }
      out += "[\n";
      for (std::size_t k = 0; k < value.size(); ++k) {
        if (k) out += ",\n";
        out += pad_in;
        dump_rec(value[k], out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

double number_from(const Json& v, const char* what) {
  if (!v.is_number())
    throw std::invalid_argument(std::string(what) + ": expected a number");
  return v.get<double>();
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump_rec(value, out, indent, 0);
  out += "\n";
  return out;
}

Json to_json(const Quaternion& q) { return Json::array({q.w, q.x, q.y, q.z}); }

Json to_json(const QVector& x) {
  Json arr = Json::array();
  for (std::size_t j = 0; j < x.size(); ++j) arr.push_back(to_json(x[j]));
  return arr;
}

Json to_json(const QMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Quaternion quaternion_from_json(const Json& value) {
  if (!value.is_array() || value.size() != 4)
    throw std::invalid_argument(
        "quaternion: expected a 4-element array [w, x, y, z]");
  return {number_from(value[0], "quaternion"),
          number_from(value[1], "quaternion"),
          number_from(value[2], "quaternion"),
          number_from(value[3], "quaternion")};
}

QVector qvector_from_json(const Json& value) {
  if (!value.is_array())
    throw std::invalid_argument("vector: expected an array of quaternions");
  QVector x(value.size());
  for (std::size_t j = 0; j < value.size(); ++j)
    x[j] = quaternion_from_json(value[j]);
  return x;
}

QMatrix qmatrix_from_json(const Json& value) {
  if (!value.is_array() || value.empty())
    throw std::invalid_argument("matrix: expected a nonempty array of rows");
  const std::size_t rows = value.size();
  const std::size_t cols = value[0].is_array() ? value[0].size() : 0;
  if (cols == 0)
    throw std::invalid_argument("matrix: rows must be nonempty arrays");
  QMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!value[i].is_array() || value[i].size() != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (std::size_t j = 0; j < cols; ++j)
      a(i, j) = quaternion_from_json(value[i][j]);
  }
  return a;
}

}  // namespace qspectral
