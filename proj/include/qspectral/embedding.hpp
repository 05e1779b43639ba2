#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qspectral/qmatrix.hpp"
#include "qspectral/quaternion.hpp"

namespace qspectral {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A pair (m, n) of unit imaginaries, orthogonal in R^4, fixing the slice
/// plane C_m and the anti C_m-linear map Phi(x) = x*n. The triple
/// {1, m, n, m*n} is then an orthonormal real basis of H.
struct SliceFrame {
  UnitImaginary m;
  UnitImaginary n;

  SliceFrame(UnitImaginary m_, UnitImaginary n_);

  /// Deterministic completion: n is j rotated away from m (k as fallback
  /// when m is too close to +-j).
  static SliceFrame around(const UnitImaginary& m);
  static SliceFrame standard() { return around(UnitImaginary::i()); }

  Quaternion third() const { return m.value() * n.value(); }

  /// Coordinates of q in the frame basis: q = z1 + z2 * n with z1, z2 in C_m.
  std::complex<double> component_1(const Quaternion& q) const;
  std::complex<double> component_2(const Quaternion& q) const;
  /// Inverse of the coordinate map.
  Quaternion assemble(std::complex<double> z1, std::complex<double> z2) const;
  /// Embeds alpha + i beta into C_m as a quaternion.
  Quaternion embed(std::complex<double> z) const;
};

/// The frame adapted splitting A = A1 + A2 * n with C_m-valued blocks.
struct ComplexPairForm {
  CMatrix a1;
  CMatrix a2;
};

ComplexPairForm pair_form(const QMatrix& a, const SliceFrame& frame);
QMatrix from_pair_form(const ComplexPairForm& form, const SliceFrame& frame);

/// The complex adjoint representation
///   chi(A) = [[A1, A2], [-conj(A2), conj(A1)]],
/// a unital *-homomorphism from quaternion matrices into C^{2n x 2n}.
CMatrix complex_embed(const QMatrix& a, const SliceFrame& frame);

/// Inverse of complex_embed on structured matrices; the input is first
/// projected onto the image of chi (the projection distance is available via
/// structure_defect).
QMatrix complex_unembed(const CMatrix& m, const SliceFrame& frame);
double structure_defect(const CMatrix& m);

/// The C_m-linear isometry H^n -> C^{2n}, x -> (x1; -conj(x2)), which
/// intertwines A with chi(A).
CVector vector_embed(const QVector& x, const SliceFrame& frame);
QVector vector_unembed(const CVector& w, const SliceFrame& frame);

/// The antilinear symplectic structure S(u; v) = (-conj v; conj u) commuting
/// with every chi(A); S^2 = -1 and eigenvalues of chi(A) pair up under it.
CVector symplectic_conjugate(const CVector& w);

/// Spectral norm (largest singular value), computed on the embedding;
/// chi preserves the operator norm exactly.
double operator_norm(const QMatrix& a);
double operator_norm(const SliceFrame& frame, const QMatrix& a);

/// Smallest singular value of the embedding.
double min_singular_value(const QMatrix& a);

/// Smallest eigenvalue of a self adjoint quaternion matrix.
double min_symmetric_eigenvalue(const QMatrix& a);

/// Inverse through the embedding.
QMatrix inverse(const QMatrix& a);

struct InverseSqrtResult {
  QMatrix matrix;
  int clamped = 0;  // eigenvalues lifted to the 1e-14 * max floor
};

/// B = A^{-1/2} for self adjoint positive A, through the embedding's
/// eigendecomposition. Eigenvalues below 1e-14 times the largest are clamped
/// to that floor and counted; an eigenvalue below -tol * scale is rejected.
InverseSqrtResult positive_inverse_sqrt(const QMatrix& a,
                                        double tol = kDefaultTol);

/// Z_T = T (I + T*T)^{-1/2}; a strict norm contraction, normal when T is,
/// and T is recovered as Z (I - Z*Z)^{-1/2}.
QMatrix z_transform(const QMatrix& t);

/// Orthonormal eigendecomposition of a (numerically) normal complex matrix:
/// B V = V diag(d) with V unitary to machine precision. Hermitian and skew
/// parts are diagonalized in two stages so exactly repeated eigenvalues get
/// orthonormal bases.
struct ComplexNormalEigen {
  CMatrix vectors;
  CVector values;
  double residual = 0.0;  // |B V - V D|_F / max(1, |B|_F)
};

ComplexNormalEigen eigendecompose_normal(const CMatrix& b);

}  // namespace qspectral
