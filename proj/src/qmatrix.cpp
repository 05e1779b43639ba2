#include "qspectral/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qspectral/embedding.hpp"

namespace qspectral {

namespace {

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

}  // namespace

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) m(r, r) = Quaternion::one();
  return m;
}

QMatrix QMatrix::zero(std::size_t rows, std::size_t cols) {
  return QMatrix(rows, cols);
}

QMatrix QMatrix::diagonal(const std::vector<Quaternion>& d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t r = 0; r < d.size(); ++r) m(r, r) = d[r];
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& columns) {
  if (columns.empty()) throw std::invalid_argument("from_columns: empty");
  const std::size_t rows = columns.front().size();
  QMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows)
      throw std::invalid_argument("from_columns: mixed dimensions");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<QVector> QMatrix::columns() const {
  std::vector<QVector> cols;
  cols.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) cols.push_back(column(c));
  return cols;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b, "QMatrix addition");
  QMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b, "QMatrix subtraction");
  QMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("QMatrix product: inner dimension mismatch");
  QMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion& aik = a(i, k);
      if (aik.w == 0 && aik.x == 0 && aik.y == 0 && aik.z == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

QMatrix operator*(const QMatrix& a, double s) {
  QMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * s;
  return r;
}

QMatrix operator*(double s, const QMatrix& a) { return a * s; }

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("QMatrix apply: dimension mismatch");
  QVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Quaternion acc;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    r[i] = acc;
  }
  return r;
}

QMatrix adjoint(const QMatrix& a) {
  QMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = conj(a(i, j));
  return r;
}

QMatrix scale_columns(const QMatrix& a, const std::vector<Quaternion>& d) {
  if (d.size() != a.cols())
    throw std::invalid_argument("scale_columns: dimension mismatch");
  QMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * d[j];
  return r;
}

double frobenius_norm(const QMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += norm_sq(a(i, j));
  return std::sqrt(acc);
}

double commutator_norm(const QMatrix& a, const QMatrix& b) {
  return frobenius_norm(a * b - b * a);
}

OperatorClass classify(const QMatrix& a, double tol) {
  if (tol <= 0) throw std::invalid_argument("classify: tol must be positive");
  if (!a.is_square()) throw std::invalid_argument("classify: square matrix required");
  const QMatrix astar = adjoint(a);
  const QMatrix id = QMatrix::identity(a.rows());
  const double scale = std::max(1.0, frobenius_norm(a));

  OperatorClass c;
  c.normal_residual = frobenius_norm(astar * a - a * astar);
  c.self_adjoint_residual = frobenius_norm(astar - a);
  c.anti_self_adjoint_residual = frobenius_norm(astar + a);
  c.unitary_residual =
      frobenius_norm(a * astar - id) + frobenius_norm(astar * a - id);

  c.normal = c.normal_residual <= tol * scale * scale;
  c.self_adjoint = c.self_adjoint_residual <= tol * scale;
  c.anti_self_adjoint = c.anti_self_adjoint_residual <= tol * scale;
  c.unitary = c.unitary_residual <= tol * std::max(1.0, scale * scale);
  if (c.self_adjoint) {
    c.min_eigenvalue = min_symmetric_eigenvalue(a);
    c.positive = c.min_eigenvalue >= -tol * scale;
  }
  return c;
}

QMatrix delta(const QMatrix& a, const Quaternion& q) {
  if (!a.is_square()) throw std::invalid_argument("delta: square matrix required");
  const double trace_q = 2.0 * real_part(q);
  return a * a - a * trace_q + QMatrix::identity(a.rows()) * norm_sq(q);
}

}  // namespace qspectral
