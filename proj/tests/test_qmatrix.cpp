#include <doctest.h>

#include "qspectral/qmatrix.hpp"
#include "qspectral/random.hpp"

using namespace qspectral;

namespace {

QMatrix diag_ij() {
  return QMatrix::diagonal({Quaternion::i(), Quaternion::j()});
}

}  // namespace

TEST_CASE("matrix action is right linear") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + (rng() % 6);
    const QMatrix a = random_qmatrix(n, rng);
    const QVector x = random_qvector(n, rng);
    const QVector y = random_qvector(n, rng);
    const Quaternion q = random_quaternion(rng);
    const QVector lhs = a * (x * q + y);
    const QVector rhs = (a * x) * q + a * y;
    CHECK(norm(lhs - rhs) <=
          1e-12 * (1.0 + frobenius_norm(a) * (norm(x) * abs(q) + norm(y))));
  }
}

TEST_CASE("adjoint is the conjugate transpose") {
  QMatrix single(1, 1);
  single(0, 0) = Quaternion::i();
  CHECK(abs(adjoint(single)(0, 0) + Quaternion::i()) == 0.0);

  const QMatrix d = adjoint(diag_ij());
  CHECK(abs(d(0, 0) + Quaternion::i()) == 0.0);
  CHECK(abs(d(1, 1) + Quaternion::j()) == 0.0);

  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + (rng() % 6);
    const QMatrix a = random_qmatrix(n, rng);
    const QMatrix b = random_qmatrix(n, rng);
    CHECK(frobenius_norm(adjoint(adjoint(a)) - a) == 0.0);
    CHECK(frobenius_norm(adjoint(a * b) - adjoint(b) * adjoint(a)) <=
          1e-12 * (1.0 + frobenius_norm(a) * frobenius_norm(b)));
    const QVector x = random_qvector(n, rng);
    const QVector y = random_qvector(n, rng);
    CHECK(abs(inner(x, a * y) - inner(adjoint(a) * x, y)) <=
          1e-12 * (1.0 + frobenius_norm(a) * norm(x) * norm(y)));
  }
}

TEST_CASE("classification flags") {
  const OperatorClass rot = classify(diag_ij());
  CHECK(rot.normal);
  CHECK(rot.anti_self_adjoint);
  CHECK(rot.unitary);
  CHECK_FALSE(rot.self_adjoint);
  CHECK_FALSE(rot.positive);

  QMatrix nilpotent(2, 2);
  nilpotent(0, 1) = Quaternion::one();
  const OperatorClass nil = classify(nilpotent);
  CHECK_FALSE(nil.normal);
  CHECK_FALSE(nil.self_adjoint);
  CHECK_FALSE(nil.anti_self_adjoint);
  CHECK_FALSE(nil.unitary);
  CHECK_FALSE(nil.positive);
  CHECK(nil.normal_residual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  QMatrix two(1, 1);
  two(0, 0) = Quaternion{2};
  const OperatorClass pos = classify(two);
  CHECK(pos.normal);
  CHECK(pos.self_adjoint);
  CHECK(pos.positive);
  CHECK(pos.min_eigenvalue == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(pos.anti_self_adjoint);
  CHECK_FALSE(pos.unitary);
}

TEST_CASE("delta polynomial") {
  // diag(i, j) squares to -I; q = i contributes no middle term and |q|^2 = 1
  CHECK(frobenius_norm(delta(diag_ij(), Quaternion::i())) <= 1e-15);

  QMatrix two(1, 1);
  two(0, 0) = Quaternion{2};
  const QMatrix d = delta(two, Quaternion{1});
  CHECK(abs(d(0, 0) - Quaternion::one()) <= 1e-15);

  Rng rng(7);
  const SliceFrame frame = SliceFrame::standard();
  const QMatrix t = random_normal_operator(5, frame, rng);
  for (int trial = 0; trial < 50; ++trial) {
    const Quaternion q = random_quaternion(rng);
    Quaternion s = random_quaternion(rng);
    if (abs(s) < 1e-3) s = Quaternion::one();
    const QMatrix lhs = delta(t, q);
    const QMatrix rhs = delta(t, inverse(s) * q * s);
    CHECK(frobenius_norm(lhs - rhs) <=
          1e-11 * (1.0 + frobenius_norm(t) * frobenius_norm(t) + norm_sq(q)));
  }
}

TEST_CASE("classification is stable under unitary conjugation") {
  Rng rng(11);
  const SliceFrame frame = SliceFrame::standard();
  for (int trial = 0; trial < 10; ++trial) {
    const QMatrix t = random_normal_operator(4, frame, rng);
    const QMatrix u = random_unitary(4, rng);
    const OperatorClass a = classify(t);
    const OperatorClass b = classify(adjoint(u) * t * u);
    CHECK(a.normal == b.normal);
    CHECK(a.self_adjoint == b.self_adjoint);
    CHECK(a.anti_self_adjoint == b.anti_self_adjoint);
    CHECK(a.unitary == b.unitary);
    CHECK(a.positive == b.positive);
  }
}
