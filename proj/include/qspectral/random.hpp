#pragma once

#include <random>
#include <vector>

#include "qspectral/embedding.hpp"
#include "qspectral/qmatrix.hpp"

namespace qspectral {

using Rng = std::mt19937_64;

/// Unit scale Gaussian components.
Quaternion random_quaternion(Rng& rng);
QVector random_qvector(std::size_t n, Rng& rng);
QMatrix random_qmatrix(std::size_t n, Rng& rng);

/// Quaternionic unitary obtained by orthonormalizing Gaussian columns.
QMatrix random_unitary(std::size_t n, Rng& rng);

/// Normal operator with a planted spectrum: U diag(lambda) U* for the given
/// upper half plane eigenvalues (repeated per multiplicity).
QMatrix planted_normal(const std::vector<SliceComplex>& spectrum,
                       const SliceFrame& frame, Rng& rng);

/// Normal operator with n random eigenvalues alpha ~ N(0,1),
/// beta = |N(0,1)| in the closed upper half plane of C_m.
QMatrix random_normal_operator(std::size_t n, const SliceFrame& frame,
                               Rng& rng);

/// Random polynomial p(T, T*) of total degree at most max_degree, with C_m
/// coefficients realized as alpha I + beta J; commutes with T and T* by
/// construction when T is normal and J is its complex structure.
QMatrix random_polynomial_in(const QMatrix& t, const QMatrix& j,
                             int max_degree, Rng& rng);

}  // namespace qspectral
