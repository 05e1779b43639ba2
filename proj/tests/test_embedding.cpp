#include <doctest.h>

#include "qspectral/embedding.hpp"
#include "qspectral/random.hpp"

using namespace qspectral;

TEST_CASE("frame completion is orthogonal and deterministic") {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const UnitImaginary m(random_quaternion(rng) + Quaternion{0, 1.5, 0, 0});
    const SliceFrame frame = SliceFrame::around(m);
    CHECK(std::fabs(dot(frame.m.value(), frame.n.value())) <= 1e-12);
    CHECK(abs(frame.m.value() * frame.n.value() +
              frame.n.value() * frame.m.value()) <= 1e-12);
    const SliceFrame again = SliceFrame::around(m);
    CHECK(abs(frame.n.value() - again.n.value()) == 0.0);
  }
  // m close to j falls back to the k axis
  const SliceFrame fallback = SliceFrame::around(UnitImaginary::j());
  CHECK(std::fabs(dot(fallback.n.value(), Quaternion::k())) >
        1.0 - 1e-12);
}

TEST_CASE("frame coordinates split and reassemble quaternions") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const UnitImaginary m(random_quaternion(rng) + Quaternion{0, 0, 1.5, 0});
    const SliceFrame frame = SliceFrame::around(m);
    const Quaternion q = random_quaternion(rng);
    const Quaternion back =
        frame.assemble(frame.component_1(q), frame.component_2(q));
    CHECK(abs(q - back) <= 1e-14 * (1.0 + abs(q)));
    // the splitting is literally q = z1 + z2 * n
    const Quaternion direct = frame.embed(frame.component_1(q)) +
                              frame.embed(frame.component_2(q)) * frame.n.value();
    CHECK(abs(q - direct) <= 1e-14 * (1.0 + abs(q)));
  }
}

TEST_CASE("complex embedding is a unital star homomorphism") {
  const SliceFrame frame = SliceFrame::standard();

  // chi of a pure j entry in the (i, j) frame
  QMatrix jm(1, 1);
  jm(0, 0) = Quaternion::j();
  const CMatrix chi_j = complex_embed(jm, frame);
  CHECK(std::abs(chi_j(0, 0)) <= 1e-15);
  CHECK(std::abs(chi_j(0, 1) - std::complex<double>(1, 0)) <= 1e-15);
  CHECK(std::abs(chi_j(1, 0) + std::complex<double>(1, 0)) <= 1e-15);
  CHECK(std::abs(chi_j(1, 1)) <= 1e-15);

  for (std::size_t n : {1u, 3u}) {
    const CMatrix chi_id = complex_embed(QMatrix::identity(n), frame);
    CHECK((chi_id - CMatrix::Identity(2 * n, 2 * n)).norm() <= 1e-15);
  }

  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + (rng() % 5);
    const UnitImaginary m(random_quaternion(rng) + Quaternion{0, 0, 0, 1.5});
    const SliceFrame f = SliceFrame::around(m);
    const QMatrix a = random_qmatrix(n, rng);
    const QMatrix b = random_qmatrix(n, rng);
    const double scale = 1.0 + frobenius_norm(a) * frobenius_norm(b);
    CHECK((complex_embed(a * b, f) - complex_embed(a, f) * complex_embed(b, f))
              .norm() <= 1e-11 * scale);
    CHECK((complex_embed(adjoint(a), f) - complex_embed(a, f).adjoint())
              .norm() <= 1e-13 * (1.0 + frobenius_norm(a)));
    CHECK(std::fabs(complex_embed(a, f).norm() -
                    std::sqrt(2.0) * frobenius_norm(a)) <=
          1e-11 * (1.0 + frobenius_norm(a)));
    CHECK(frobenius_norm(complex_unembed(complex_embed(a, f), f) - a) <=
          1e-13 * (1.0 + frobenius_norm(a)));
    CHECK(structure_defect(complex_embed(a, f)) <= 1e-13 * scale);
  }
}

TEST_CASE("vector embedding intertwines the action") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + (rng() % 5);
    const UnitImaginary m(random_quaternion(rng) + Quaternion{0, 1.5, 0, 0});
    const SliceFrame f = SliceFrame::around(m);
    const QMatrix a = random_qmatrix(n, rng);
    const QVector x = random_qvector(n, rng);
    CHECK((vector_embed(a * x, f) - complex_embed(a, f) * vector_embed(x, f))
              .norm() <= 1e-12 * (1.0 + frobenius_norm(a) * norm(x)));
    CHECK(std::fabs(vector_embed(x, f).norm() - norm(x)) <= 1e-13 * (1.0 + norm(x)));
    CHECK(norm(vector_unembed(vector_embed(x, f), f) - x) <=
          1e-13 * (1.0 + norm(x)));
    // right multiplication by n is the negated symplectic conjugate
    CHECK((vector_embed(x * f.n.value(), f) +
           symplectic_conjugate(vector_embed(x, f)))
              .norm() <= 1e-13 * (1.0 + norm(x)));
  }
}

TEST_CASE("operator norm through the embedding") {
  CHECK(operator_norm(QMatrix::identity(3)) == doctest::Approx(1.0));
  const QMatrix d = QMatrix::diagonal({Quaternion::i(), Quaternion::j() * 3.0});
  CHECK(operator_norm(d) == doctest::Approx(3.0).epsilon(1e-12));

  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + (rng() % 5);
    const QMatrix a = random_qmatrix(n, rng);
    const double op = operator_norm(a);
    for (int probe = 0; probe < 100; ++probe) {
      const QVector x = random_qvector(n, rng);
      CHECK(norm(a * x) <= op * norm(x) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("positive inverse square root") {
  QMatrix id = QMatrix::identity(2);
  CHECK(frobenius_norm(positive_inverse_sqrt(id).matrix - id) <= 1e-13);

  QMatrix four(1, 1);
  four(0, 0) = Quaternion{4};
  CHECK(abs(positive_inverse_sqrt(four).matrix(0, 0) - Quaternion{0.5}) <=
        1e-13);

  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + (rng() % 5);
    const QMatrix t = random_qmatrix(n, rng);
    const QMatrix gram = QMatrix::identity(n) + adjoint(t) * t;
    const QMatrix b = positive_inverse_sqrt(gram).matrix;
    CHECK(frobenius_norm(adjoint(b) - b) <= 1e-11);
    CHECK(frobenius_norm(b * gram * b - QMatrix::identity(n)) <=
          1e-9 * (1.0 + frobenius_norm(gram)));
  }

  QMatrix negative(1, 1);
  negative(0, 0) = Quaternion{-1};
  CHECK_THROWS_AS(positive_inverse_sqrt(negative), std::domain_error);
  QMatrix skew(1, 1);
  skew(0, 0) = Quaternion::i();
  CHECK_THROWS_AS(positive_inverse_sqrt(skew), std::domain_error);
}

TEST_CASE("z transform contracts and inverts") {
  QMatrix two(1, 1);
  two(0, 0) = Quaternion{2};
  CHECK(abs(z_transform(two)(0, 0) - Quaternion{2.0 / std::sqrt(5.0)}) <=
        1e-13);
  const QMatrix zero = QMatrix::zero(2, 2);
  CHECK(frobenius_norm(z_transform(zero)) == 0.0);

  Rng rng(43);
  const SliceFrame frame = SliceFrame::standard();
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + (rng() % 6);
    const QMatrix t = random_normal_operator(n, frame, rng);
    const QMatrix z = z_transform(t);
    CHECK(operator_norm(z) < 1.0);
    CHECK(classify(z).normal);
    CHECK(commutator_norm(z, t) <= 1e-9 * (1.0 + frobenius_norm(t)));
    CHECK(commutator_norm(z, adjoint(t)) <= 1e-9 * (1.0 + frobenius_norm(t)));
    const QMatrix back =
        z * positive_inverse_sqrt(QMatrix::identity(n) - adjoint(z) * z).matrix;
    CHECK(frobenius_norm(t - back) <= 1e-8 * (1.0 + frobenius_norm(t)));
  }
}

TEST_CASE("inverse through the embedding") {
  Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + (rng() % 5);
    const QMatrix a = random_qmatrix(n, rng) + QMatrix::identity(n) * 4.0;
    const QMatrix ainv = inverse(a);
    CHECK(frobenius_norm(a * ainv - QMatrix::identity(n)) <= 1e-11 *
          (1.0 + frobenius_norm(a)));
    CHECK(frobenius_norm(ainv * a - QMatrix::identity(n)) <= 1e-11 *
          (1.0 + frobenius_norm(a)));
  }
}

TEST_CASE("normal complex eigendecomposition handles degeneracy") {
  Rng rng(53);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 7);
    // plant a normal matrix with a repeated eigenvalue
    CMatrix gauss(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        gauss(r, c) = std::complex<double>(g(rng), g(rng));
    const CMatrix q = Eigen::HouseholderQR<CMatrix>(gauss).householderQ();
    CVector d(n);
    for (Eigen::Index k = 0; k < n; ++k)
      d(k) = std::complex<double>(g(rng), g(rng));
    d(n - 1) = d(0);  // exact repeat
    const CMatrix b = q * d.asDiagonal() * q.adjoint();

    const ComplexNormalEigen eig = eigendecompose_normal(b);
    CHECK(eig.residual <= 1e-12);
    CHECK((eig.vectors.adjoint() * eig.vectors - CMatrix::Identity(n, n))
              .norm() <= 1e-12);
  }
}
