#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>

namespace qspectral {

/// Base tolerance used for residual checks throughout the library. Most
/// checks scale it by the magnitudes involved; callers can override.
inline constexpr double kDefaultTol = 1e-10;

/// A real quaternion w + x*i + y*j + z*k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}
  constexpr Quaternion(double real) : w(real) {}  // NOLINT(google-explicit-constructor)

  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  Quaternion& operator+=(const Quaternion& r) {
    w += r.w; x += r.x; y += r.y; z += r.z;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& r) {
    w -= r.w; x -= r.x; y -= r.y; z -= r.z;
    return *this;
  }
  Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  Quaternion& operator/=(double s) { return (*this) *= (1.0 / s); }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

/// Hamilton product; noncommutative.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
constexpr Quaternion operator*(Quaternion a, double s) {
  return {a.w * s, a.x * s, a.y * s, a.z * s};
}
constexpr Quaternion operator*(double s, Quaternion a) { return a * s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a * (1.0 / s); }

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr double real_part(const Quaternion& q) { return q.w; }
constexpr Quaternion imag_part(const Quaternion& q) { return {0, q.x, q.y, q.z}; }
constexpr double norm_sq(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}
inline double abs(const Quaternion& q) { return std::sqrt(norm_sq(q)); }
inline double imag_norm(const Quaternion& q) {
  return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
}

/// Euclidean inner product of R^4 coordinates.
constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Quaternion inverse(const Quaternion& q) {
  const double n2 = norm_sq(q);
  if (n2 == 0.0) throw std::domain_error("quaternion inverse: zero input");
  return conj(q) / n2;
}

inline bool approx_equal(const Quaternion& a, const Quaternion& b,
                         double tol = kDefaultTol) {
  return abs(a - b) <= tol * (1.0 + std::max(abs(a), abs(b)));
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << ',' << q.x << ',' << q.y << ',' << q.z << ')';
}

/// A point of the unit sphere in Im(H). The constructor normalizes the
/// imaginary part of its argument and rejects inputs whose imaginary part is
/// smaller than 1e-8; the stored value satisfies Re(u)=0, |u|=1, u^2=-1.
class UnitImaginary {
 public:
  explicit UnitImaginary(const Quaternion& q) {
    const double n = imag_norm(q);
    if (n < 1e-8)
      throw std::invalid_argument(
          "UnitImaginary: imaginary part smaller than 1e-8");
    u_ = Quaternion{0, q.x / n, q.y / n, q.z / n};
  }
  static UnitImaginary i() { return UnitImaginary(Quaternion::i()); }
  static UnitImaginary j() { return UnitImaginary(Quaternion::j()); }
  static UnitImaginary k() { return UnitImaginary(Quaternion::k()); }

  const Quaternion& value() const { return u_; }
  operator Quaternion() const { return u_; }  // NOLINT(google-explicit-constructor)

 private:
  Quaternion u_;
};

/// An element alpha + m*beta of the slice complex plane C_m.
struct SliceComplex {
  double alpha = 0.0;
  double beta = 0.0;
  Quaternion m = Quaternion::i();  // unit imaginary frame axis

  SliceComplex() = default;
  SliceComplex(double a, double b, const UnitImaginary& frame)
      : alpha(a), beta(b), m(frame.value()) {}
  SliceComplex(double a, double b, const Quaternion& frame_axis)
      : alpha(a), beta(b), m(frame_axis) {}

  Quaternion embed() const { return Quaternion{alpha} + m * beta; }
  std::complex<double> to_complex() const { return {alpha, beta}; }
};

inline double distance(const SliceComplex& a, const SliceComplex& b) {
  return std::hypot(a.alpha - b.alpha, a.beta - b.beta);
}

/// The unique point of [q] in the closed upper half plane of C_m:
/// Re(q) + m*|Im(q)|.
inline SliceComplex class_representative(const Quaternion& q,
                                         const UnitImaginary& m) {
  return SliceComplex(real_part(q), imag_norm(q), m);
}

/// Whether p and q lie on the same similarity sphere: equal real parts and
/// equal imaginary moduli within tol.
inline bool same_class(const Quaternion& p, const Quaternion& q, double tol) {
  if (tol <= 0) throw std::invalid_argument("same_class: tol must be positive");
  return std::fabs(real_part(p) - real_part(q)) <= tol &&
         std::fabs(imag_norm(p) - imag_norm(q)) <= tol;
}

/// Distance between the similarity spheres [p] and [q], measured between
/// their upper half plane representatives (Re, |Im|).
inline double class_distance(const Quaternion& p, const Quaternion& q) {
  return std::hypot(real_part(p) - real_part(q), imag_norm(p) - imag_norm(q));
}

/// The component of q orthogonal to span{1, m}, i.e. its distance from C_m.
inline double slice_defect(const Quaternion& q, const UnitImaginary& m) {
  const Quaternion rest = q - Quaternion{q.w} - m.value() * dot(m.value(), q);
  return abs(rest);
}

/// Membership in the slice plane C_m; equivalent to commutation with all of
/// C_m.
inline bool slice_membership(const Quaternion& q, const UnitImaginary& m,
                             double tol) {
  if (tol <= 0)
    throw std::invalid_argument("slice_membership: tol must be positive");
  return slice_defect(q, m) <= tol;
}

}  // namespace qspectral
