#include "qspectral/random.hpp"

#include <cmath>

namespace qspectral {

Quaternion random_quaternion(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
}

QVector random_qvector(std::size_t n, Rng& rng) {
  QVector v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = random_quaternion(rng);
  return v;
}

QMatrix random_qmatrix(std::size_t n, Rng& rng) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_quaternion(rng);
  return m;
}

QMatrix random_unitary(std::size_t n, Rng& rng) {
  while (true) {
    std::vector<QVector> cols;
    cols.reserve(n);
    for (std::size_t c = 0; c < n; ++c) cols.push_back(random_qvector(n, rng));
    try {
      return QMatrix::from_columns(gram_schmidt(cols).vectors());
    } catch (const std::invalid_argument&) {
      // Gaussian columns are dependent with probability zero; retry.
    }
  }
}

QMatrix planted_normal(const std::vector<SliceComplex>& spectrum,
                       const SliceFrame& frame, Rng& rng) {
  const std::size_t n = spectrum.size();
  const QMatrix u = random_unitary(n, rng);
  std::vector<Quaternion> diag;
  diag.reserve(n);
  for (const SliceComplex& lambda : spectrum)
    diag.push_back(frame.embed(lambda.to_complex()));
  return scale_columns(u, diag) * adjoint(u);
}

QMatrix random_normal_operator(std::size_t n, const SliceFrame& frame,
                               Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<SliceComplex> spectrum;
  spectrum.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    spectrum.emplace_back(gauss(rng), std::fabs(gauss(rng)), frame.m);
  return planted_normal(spectrum, frame, rng);
}

QMatrix random_polynomial_in(const QMatrix& t, const QMatrix& j,
                             int max_degree, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t n = t.rows();
  const QMatrix tstar = adjoint(t);
  QMatrix acc = QMatrix::zero(n, n);
  QMatrix tpow = QMatrix::identity(n);
  for (int p = 0; p <= max_degree; ++p) {
    QMatrix mixed = tpow;
    for (int q = 0; p + q <= max_degree; ++q) {
      // C_m coefficient alpha + m beta acting as alpha I + beta J, the left
      // multiplication tied to the basis that produced J.
      acc = acc + mixed * gauss(rng) + j * mixed * gauss(rng);
      mixed = mixed * tstar;
    }
    tpow = tpow * t;
  }
  return acc;
}

}  // namespace qspectral
