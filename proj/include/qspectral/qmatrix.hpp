#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qspectral/quaternion.hpp"
#include "qspectral/qvector.hpp"

namespace qspectral {

/// Right H-linear operator on H^n stored as a dense quaternion matrix; it
/// acts on a QVector by the usual matrix-vector product, with the vector's
/// scalars on the right.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix zero(std::size_t rows, std::size_t cols);
  static QMatrix diagonal(const std::vector<Quaternion>& d);
  static QMatrix from_columns(const std::vector<QVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Quaternion& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Quaternion& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  QVector column(std::size_t c) const;
  std::vector<QVector> columns() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Quaternion> data_;
};

QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, double s);
QMatrix operator*(double s, const QMatrix& a);
QVector operator*(const QMatrix& a, const QVector& x);

/// Conjugate transpose; satisfies <x|Ay> = <A*x|y>.
QMatrix adjoint(const QMatrix& a);

/// Scales column c by d_c on the right, realizing the diagonal right
/// eigenvalue action U * diag(d).
QMatrix scale_columns(const QMatrix& a, const std::vector<Quaternion>& d);

double frobenius_norm(const QMatrix& a);
double commutator_norm(const QMatrix& a, const QMatrix& b);

/// Residual based operator class flags. Each residual is Frobenius and is
/// compared against tol scaled by the appropriate power of max(1, |A|_F).
struct OperatorClass {
  bool normal = false;
  bool self_adjoint = false;
  bool anti_self_adjoint = false;
  bool unitary = false;
  bool positive = false;
  double normal_residual = 0.0;
  double self_adjoint_residual = 0.0;
  double anti_self_adjoint_residual = 0.0;
  double unitary_residual = 0.0;
  double min_eigenvalue = 0.0;  // meaningful only when self_adjoint
};

OperatorClass classify(const QMatrix& a, double tol = kDefaultTol);

/// Delta_q(A) = A^2 - A (q + conj q) + I |q|^2. Both coefficients are class
/// functions of q, so Delta is constant on similarity spheres.
QMatrix delta(const QMatrix& a, const Quaternion& q);

/// Raised when an operation requires a normal operator and the input fails
/// the residual test; carries the normality residual.
class normality_error : public std::runtime_error {
 public:
  normality_error(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace qspectral
