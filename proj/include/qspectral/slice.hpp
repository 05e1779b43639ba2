#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qspectral/embedding.hpp"
#include "qspectral/qmatrix.hpp"

namespace qspectral {

/// Right eigenvalue decomposition of a normal operator: T U = U diag(D) with
/// U quaternionically unitary and every eigenvalue in the closed upper half
/// plane of C_m. Eigenvalues are clustered representatives, sorted by
/// (alpha, beta); columns of U are orthonormalized per cluster.
struct EigenSystem {
  QMatrix basis;                     // columns are right eigenvectors
  std::vector<SliceComplex> values;  // one per column, beta >= 0
  std::vector<std::size_t> cluster_of;
  std::vector<SliceComplex> clusters;       // distinct, sorted
  std::vector<std::size_t> multiplicities;  // per cluster
  double eigen_residual = 0.0;       // |T U - U D|_F / max(1, |T|_F)
  double unitarity_residual = 0.0;   // |U*U - I|_F
  double normality_residual = 0.0;

  std::vector<Quaternion> value_quaternions() const;
};

/// Greedy merge radius for eigenvalue clusters of T.
double cluster_tolerance(const QMatrix& t);

EigenSystem spectral_decompose(const QMatrix& t, const SliceFrame& frame,
                               double tol = kDefaultTol);

/// Re-mixes each cluster's eigenvector block by a seeded random C_m unitary.
/// The decomposition's projectors, J and spectrum are unchanged; only the
/// basis gauge moves.
EigenSystem randomize_within_clusters(const EigenSystem& system,
                                      const SliceFrame& frame,
                                      std::uint64_t seed);

/// An anti self adjoint unitary: J* = -J, J*J = I, J^2 = -I.
struct ComplexStructure {
  QMatrix j;
  std::optional<QMatrix> generator;  // the U whose columns produced J
  double anti_self_adjoint_residual = 0.0;
  double unitarity_residual = 0.0;
  double commutation_residual = 0.0;  // max over |JT-TJ|, |JT*-T*J|, scaled
};

/// J = U diag(m, ..., m) U* from the eigendecomposition; commutes with T and
/// with T*.
ComplexStructure construct_j(const QMatrix& t, const SliceFrame& frame,
                             double tol = kDefaultTol);
ComplexStructure construct_j(const EigenSystem& system, const SliceFrame& frame);

/// Slice halves of x: x_plus = (x - (Jx)m)/2 satisfies J x_plus = x_plus m,
/// x_minus the mirror, and x = x_plus + x_minus.
struct SliceSplit {
  QVector plus;
  QVector minus;
};
SliceSplit split(const QVector& x, const ComplexStructure& structure,
                 const UnitImaginary& m);

/// A Hilbert basis of H lying inside the +m eigenspace of J: J z = z m and
/// <z_a|z_b> is C_m valued.
struct SliceBasis {
  HilbertBasis plus_basis;
  SliceFrame frame;

  QMatrix as_matrix() const { return QMatrix::from_columns(plus_basis.vectors()); }
};

/// Columns of the generating U when available; for an external J, an
/// orthonormal basis of the +1 eigenspace of x -> -(Jx)m built from projected
/// coordinate vectors.
SliceBasis slice_basis(const ComplexStructure& structure,
                       const SliceFrame& frame, double tol = kDefaultTol);

/// The C_m matrix of T on the slice basis: (T_plus)_{ab} = <z_a | T z_b>.
/// Entries leaving C_m beyond tolerance signal J/T non-commutation.
CMatrix induce_complex(const QMatrix& t, const SliceBasis& basis,
                       double tol = 1e-11);

/// The unique right H-linear extension of a C_m matrix on the slice basis;
/// preserves products, adjoints, inverses and the operator norm, and
/// commutes with J.
QMatrix extend_operator(const CMatrix& a, const SliceBasis& basis);

/// One spectral sphere [lambda], reported through its upper half plane
/// representative.
struct SpectralClass {
  SliceComplex representative;
  std::size_t multiplicity = 0;
  double delta_min_singular_value = 0.0;
};

/// sigma_S(T) intersected with the closed upper half plane of C_m, as
/// clustered eigenvalue classes; each comes with the smallest singular value
/// of Delta_lambda(T) as a certificate.
std::vector<SpectralClass> spherical_spectrum(const QMatrix& t,
                                              const SliceFrame& frame,
                                              double tol = kDefaultTol);

}  // namespace qspectral
