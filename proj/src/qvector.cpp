#include "qspectral/qvector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qspectral {

namespace {

void require_same_size(const QVector& a, const QVector& b, const char* op) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
}

}  // namespace

QVector QVector::unit(std::size_t n, std::size_t index) {
  QVector e(n);
  e[index] = Quaternion::one();
  return e;
}

QVector operator+(const QVector& a, const QVector& b) {
  require_same_size(a, b, "QVector addition");
  QVector r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

QVector operator-(const QVector& a, const QVector& b) {
  require_same_size(a, b, "QVector subtraction");
  QVector r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
  return r;
}

QVector operator*(const QVector& x, const Quaternion& q) {
  QVector r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = x[j] * q;
  return r;
}

QVector operator*(const QVector& x, double s) {
  QVector r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = x[j] * s;
  return r;
}

Quaternion inner(const QVector& u, const QVector& v) {
  require_same_size(u, v, "inner");
  Quaternion acc;
  for (std::size_t j = 0; j < u.size(); ++j) acc += conj(u[j]) * v[j];
  return acc;
}

double norm(const QVector& x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += norm_sq(x[j]);
  return std::sqrt(acc);
}

Quaternion inner_via_polarization(const QVector& u, const QVector& v) {
  require_same_size(u, v, "inner_via_polarization");
  const Quaternion units[4] = {Quaternion::one(), Quaternion::i(),
                               Quaternion::j(), Quaternion::k()};
  Quaternion acc;
  for (const Quaternion& l : units) {
    const QVector ul = u * l;
    const double plus = norm(ul + v);
    const double minus = norm(ul - v);
    acc += l * ((plus * plus - minus * minus) * 0.25);
  }
  return acc;
}

HilbertBasis::HilbertBasis(std::vector<QVector> vectors)
    : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw std::invalid_argument("HilbertBasis: empty");
  const std::size_t n = vectors_.front().size();
  for (const QVector& z : vectors_)
    if (z.size() != n)
      throw std::invalid_argument("HilbertBasis: mixed dimensions");
}

std::size_t HilbertBasis::dimension() const { return vectors_.front().size(); }

HilbertBasis gram_schmidt(const std::vector<QVector>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("gram_schmidt: empty input");
  std::vector<QVector> basis;
  basis.reserve(vectors.size());
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    QVector v = vectors[a];
    const double original = norm(v);
    double drift = 0.0;
    for (const QVector& z : basis) {
      const Quaternion c = inner(z, v);
      drift = std::max(drift, abs(c));
      v = v - z * c;
    }
    // Second sweep when the first one removed large components.
    if (drift > 1e-8 * (original + 1.0)) {
      for (const QVector& z : basis) v = v - z * inner(z, v);
    }
    const double remaining = norm(v);
    if (remaining <= 1e-10 * original)
      throw std::invalid_argument(
          "gram_schmidt: vector " + std::to_string(a) +
          " is right linearly dependent on its predecessors");
    basis.push_back(v * (1.0 / remaining));
  }
  return HilbertBasis(std::move(basis));
}

std::vector<Quaternion> fourier_expand(const QVector& x,
                                       const HilbertBasis& basis) {
  if (x.size() != basis.dimension())
    throw std::invalid_argument("fourier_expand: dimension mismatch");
  std::vector<Quaternion> coeffs(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) coeffs[a] = inner(basis[a], x);
  return coeffs;
}

QVector left_multiply(const Quaternion& q, const QVector& x,
                      const HilbertBasis& basis) {
  if (x.size() != basis.dimension())
    throw std::invalid_argument("left_multiply: dimension mismatch");
  QVector r(x.size());
  for (std::size_t a = 0; a < basis.size(); ++a)
    r = r + basis[a] * (q * inner(basis[a], x));
  return r;
}

}  // namespace qspectral
