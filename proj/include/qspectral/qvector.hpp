#pragma once

#include <cstddef>
#include <vector>

#include "qspectral/quaternion.hpp"

namespace qspectral {

/// Element of H^n with the right scalar action (x*q)_j = x_j * q.
class QVector {
 public:
  QVector() = default;
  explicit QVector(std::size_t n) : entries_(n) {}
  explicit QVector(std::vector<Quaternion> entries)
      : entries_(std::move(entries)) {}

  static QVector unit(std::size_t n, std::size_t index);

  std::size_t size() const { return entries_.size(); }
  Quaternion& operator[](std::size_t j) { return entries_[j]; }
  const Quaternion& operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<Quaternion>& entries() const { return entries_; }

 private:
  std::vector<Quaternion> entries_;
};

QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
/// Right scalar action x*q.
QVector operator*(const QVector& x, const Quaternion& q);
QVector operator*(const QVector& x, double s);

/// Sum_j conj(u_j) * v_j; right linear in v, conjugate symmetric.
Quaternion inner(const QVector& u, const QVector& v);

/// The same inner product recovered from norms alone through the
/// polarization identity (1/4) sum_{l in {1,i,j,k}} (|u l + v|^2 - |u l - v|^2) l.
Quaternion inner_via_polarization(const QVector& u, const QVector& v);

double norm(const QVector& x);

/// An orthonormal family spanning H^n on the right: <z_a|z_b> = delta_ab and
/// the orthogonal complement is trivial.
class HilbertBasis {
 public:
  explicit HilbertBasis(std::vector<QVector> vectors);

  std::size_t size() const { return vectors_.size(); }
  std::size_t dimension() const;
  const QVector& operator[](std::size_t a) const { return vectors_[a]; }
  const std::vector<QVector>& vectors() const { return vectors_; }

 private:
  std::vector<QVector> vectors_;
};

/// Right linear modified Gram-Schmidt with a re-orthogonalization pass when
/// the first sweep loses more than 1e-8 relative orthogonality. A candidate
/// whose residual drops below 1e-10 times its original norm is reported as
/// right linearly dependent, naming the offending index.
HilbertBasis gram_schmidt(const std::vector<QVector>& vectors);

/// Expansion coefficients c_a = <z_a|x>, so that x = sum_a z_a * c_a.
std::vector<Quaternion> fourier_expand(const QVector& x,
                                       const HilbertBasis& basis);

/// The left multiplication induced by the basis:
/// L_q(x) = sum_a z_a * q * <z_a|x>.
QVector left_multiply(const Quaternion& q, const QVector& x,
                      const HilbertBasis& basis);

}  // namespace qspectral
