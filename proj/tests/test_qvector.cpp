#include <doctest.h>

#include <random>

#include "qspectral/qvector.hpp"
#include "qspectral/random.hpp"

using namespace qspectral;

TEST_CASE("inner product basics") {
  QVector u(2), v(2);
  u[0] = Quaternion::j();
  v[0] = Quaternion::one();
  // <e1 j | e1> = conj(j) * 1 = -j
  CHECK(abs(inner(u, v) + Quaternion::j()) == 0.0);
  CHECK_THROWS_AS(inner(u, QVector(3)), std::invalid_argument);
}

TEST_CASE("inner product axioms on random vectors") {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + (rng() % 8);
    const QVector u = random_qvector(n, rng);
    const QVector v = random_qvector(n, rng);
    const QVector w = random_qvector(n, rng);
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    const double scale = 1.0 + norm(u) * (norm(v) * abs(p) + norm(w) * abs(q));
    CHECK(abs(inner(u, v * p + w * q) - (inner(u, v) * p + inner(u, w) * q)) <=
          1e-12 * scale);
    CHECK(abs(inner(u, v) - conj(inner(v, u))) <= 1e-12 * (1.0 + norm(u) * norm(v)));
    const Quaternion self = inner(u, u);
    CHECK(self.w >= 0.0);
    CHECK(imag_norm(self) <= 1e-12 * (1.0 + self.w));
  }
}

TEST_CASE("polarization identity recovers the inner product") {
  // u = v = e1: only the l = 1 term survives, (4 - 0)/4 = 1
  QVector e1(1);
  e1[0] = Quaternion::one();
  CHECK(abs(inner_via_polarization(e1, e1) - Quaternion::one()) <= 1e-14);

  // u = e1, v = e1 * i: expanding the four norm terms by hand gives i
  QVector v = e1 * Quaternion::i();
  CHECK(abs(inner_via_polarization(e1, v) - Quaternion::i()) <= 1e-14);

  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + (rng() % 32);
    const QVector a = random_qvector(n, rng);
    const QVector b = random_qvector(n, rng);
    CHECK(abs(inner_via_polarization(a, b) - inner(a, b)) <=
          1e-11 * (norm(a) * norm(b) + 1.0));
  }
}

TEST_CASE("gram_schmidt orthonormalizes and detects dependence") {
  // canonical vectors are already orthonormal
  std::vector<QVector> canonical;
  for (std::size_t c = 0; c < 3; ++c) canonical.push_back(QVector::unit(3, c));
  const HilbertBasis id_basis = gram_schmidt(canonical);
  for (std::size_t a = 0; a < 3; ++a)
    CHECK(norm(id_basis[a] - canonical[a]) <= 1e-15);

  // {e1, e1 i + e2} -> {e1, e2}: the projection removes the e1 i part
  std::vector<QVector> tilted;
  tilted.push_back(QVector::unit(2, 0));
  QVector second = QVector::unit(2, 0) * Quaternion::i() + QVector::unit(2, 1);
  tilted.push_back(second);
  const HilbertBasis fixed = gram_schmidt(tilted);
  CHECK(norm(fixed[1] - QVector::unit(2, 1)) <= 1e-14);

  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + (rng() % 10);
    std::vector<QVector> family;
    for (std::size_t c = 0; c < n; ++c) family.push_back(random_qvector(n, rng));
    const HilbertBasis basis = gram_schmidt(family);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        CHECK(abs(inner(basis[a], basis[b]) -
                  Quaternion{a == b ? 1.0 : 0.0}) <= 1e-10);
  }

  // a right multiple of an earlier vector is reported with its index
  std::vector<QVector> dependent;
  dependent.push_back(QVector::unit(2, 0));
  dependent.push_back(QVector::unit(2, 0) * Quaternion::k());
  CHECK_THROWS_WITH_AS(gram_schmidt(dependent),
                       doctest::Contains("vector 1"), std::invalid_argument);
}

TEST_CASE("fourier expansion against a Hilbert basis") {
  std::vector<QVector> canonical;
  for (std::size_t c = 0; c < 3; ++c) canonical.push_back(QVector::unit(3, c));
  const HilbertBasis basis(canonical);

  QVector x = QVector::unit(3, 0) * Quaternion::k();
  const std::vector<Quaternion> coeffs = fourier_expand(x, basis);
  CHECK(abs(coeffs[0] - Quaternion::k()) == 0.0);
  CHECK(abs(coeffs[1]) == 0.0);
  CHECK(abs(coeffs[2]) == 0.0);

  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + (rng() % 12);
    std::vector<QVector> family;
    for (std::size_t c = 0; c < n; ++c) family.push_back(random_qvector(n, rng));
    HilbertBasis random_basis = gram_schmidt(family);
    const QVector a = random_qvector(n, rng);
    const QVector b = random_qvector(n, rng);
    const std::vector<Quaternion> ca = fourier_expand(a, random_basis);

    QVector rebuilt(n);
    double parseval = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      rebuilt = rebuilt + random_basis[k] * ca[k];
      parseval += norm_sq(ca[k]);
    }
    CHECK(norm(a - rebuilt) <= 1e-11 * (1.0 + norm(a)));
    CHECK(std::fabs(parseval - norm(a) * norm(a)) <=
          1e-11 * (1.0 + norm(a) * norm(a)));

    Quaternion series;
    for (std::size_t k = 0; k < n; ++k)
      series += inner(a, random_basis[k]) * inner(random_basis[k], b);
    CHECK(abs(inner(a, b) - series) <= 1e-11 * (1.0 + norm(a) * norm(b)));
  }
}

TEST_CASE("left multiplication induced by a basis") {
  std::vector<QVector> canonical;
  for (std::size_t c = 0; c < 4; ++c) canonical.push_back(QVector::unit(4, c));
  const HilbertBasis basis(canonical);

  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    const QVector x = random_qvector(4, rng);

    // canonical basis: L_q acts entrywise on the left
    const QVector lq = left_multiply(q, x, basis);
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(abs(lq[j] - q * x[j]) <= 1e-13 * (1.0 + abs(q) * abs(x[j])));

    CHECK(norm(left_multiply(Quaternion::one(), x, basis) - x) <= 1e-14);

    const QVector composed = left_multiply(p, left_multiply(q, x, basis), basis);
    const QVector direct = left_multiply(p * q, x, basis);
    CHECK(norm(composed - direct) <=
          1e-12 * (1.0 + abs(p) * abs(q) * norm(x)));

    // L_q is right linear
    const Quaternion scalar = random_quaternion(rng);
    CHECK(norm(left_multiply(q, x * scalar, basis) -
               left_multiply(q, x, basis) * scalar) <=
          1e-12 * (1.0 + abs(q) * abs(scalar) * norm(x)));
  }
}
