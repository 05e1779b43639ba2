#include <doctest.h>

#include <random>

#include "qspectral/quaternion.hpp"

using namespace qspectral;

namespace {

Quaternion gauss_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return {g(rng), g(rng), g(rng), g(rng)};
}

}  // namespace

TEST_CASE("Hamilton product follows the defining relations") {
  CHECK(abs(Quaternion::i() * Quaternion::j() - Quaternion::k()) == 0.0);
  CHECK(abs(Quaternion::j() * Quaternion::k() - Quaternion::i()) == 0.0);
  CHECK(abs(Quaternion::i() * Quaternion::i() + Quaternion::one()) == 0.0);
  // (1+i)(1+j) = 1 + i + j + k by distributivity
  const Quaternion lhs = (Quaternion::one() + Quaternion::i()) *
                         (Quaternion::one() + Quaternion::j());
  CHECK(abs(lhs - Quaternion{1, 1, 1, 1}) == 0.0);
  // noncommutative
  CHECK(abs(Quaternion::j() * Quaternion::i() - Quaternion::k()) > 1.0);
}

TEST_CASE("modulus is multiplicative") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 2000; ++trial) {
    const Quaternion p = gauss_quaternion(rng);
    const Quaternion q = gauss_quaternion(rng);
    CHECK(std::fabs(abs(p * q) - abs(p) * abs(q)) <=
          1e-12 * (1.0 + abs(p) * abs(q)));
  }
}

TEST_CASE("conjugation laws") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Quaternion q = gauss_quaternion(rng);
    CHECK(abs(conj(conj(q)) - q) == 0.0);
    CHECK(abs(q + conj(q) - Quaternion{2 * real_part(q)}) <= 1e-15);
    const Quaternion qq = q * conj(q);
    CHECK(std::fabs(qq.w - norm_sq(q)) <= 1e-12 * (1.0 + norm_sq(q)));
    CHECK(imag_norm(qq) <= 1e-12 * (1.0 + norm_sq(q)));
    CHECK(std::fabs(abs(conj(q)) - abs(q)) <= 1e-15);
  }
}

TEST_CASE("class representative lands in the upper half slice") {
  const UnitImaginary m = UnitImaginary::i();
  // q = 1 + 2j has |Im| = 2, so its class meets C_i^+ at 1 + 2i
  const SliceComplex rep = class_representative(Quaternion{1, 0, 2, 0}, m);
  CHECK(rep.alpha == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.beta == doctest::Approx(2.0).epsilon(1e-14));
  // a real point is its own class
  const SliceComplex real_rep = class_representative(Quaternion{3}, m);
  CHECK(real_rep.alpha == 3.0);
  CHECK(real_rep.beta == 0.0);
  // (i+j+k)/sqrt(3) is a unit imaginary: representative is m itself
  const double s = 1.0 / std::sqrt(3.0);
  for (const UnitImaginary& axis :
       {UnitImaginary::i(), UnitImaginary::j(), UnitImaginary::k()}) {
    const SliceComplex u =
        class_representative(Quaternion{0, s, s, s}, axis);
    CHECK(u.alpha == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(u.beta == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("class representative is idempotent") {
  std::mt19937_64 rng(11);
  const UnitImaginary m = UnitImaginary::j();
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion q = gauss_quaternion(rng);
    const SliceComplex rep = class_representative(q, m);
    const SliceComplex again = class_representative(rep.embed(), m);
    CHECK(distance(rep, again) <= 1e-13 * (1.0 + abs(q)));
  }
}

TEST_CASE("same_class recognizes similarity orbits") {
  CHECK(same_class(Quaternion::i(), Quaternion::j(), 1e-12));
  CHECK(same_class(Quaternion::i(), -Quaternion::i(), 1e-12));
  CHECK_FALSE(same_class(Quaternion{1, 1, 0, 0}, Quaternion{1, 2, 0, 0},
                         1e-12));
  CHECK_THROWS_AS(same_class(Quaternion::i(), Quaternion::j(), -1.0),
                  std::invalid_argument);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const Quaternion q = gauss_quaternion(rng);
    Quaternion s = gauss_quaternion(rng);
    if (abs(s) < 1e-3) s = Quaternion::one();
    CHECK(same_class(inverse(s) * q * s, q, 1e-10 * (1.0 + abs(q))));
  }
}

TEST_CASE("slice membership is commutation with the plane") {
  const UnitImaginary m = UnitImaginary::i();
  CHECK_FALSE(slice_membership(Quaternion::j(), m, 1e-12));
  CHECK(slice_membership(Quaternion{2, -3, 0, 0}, m, 1e-12));

  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const UnitImaginary axis(gauss_quaternion(rng) + Quaternion{0, 2, 0, 0});
    const Quaternion member =
        Quaternion{g(rng)} + axis.value() * g(rng);
    CHECK(slice_membership(member, axis, 1e-14 * (1.0 + abs(member))));
    // membership in the commutation formulation
    const Quaternion mu = Quaternion{g(rng)} + axis.value() * g(rng);
    CHECK(abs(member * mu - mu * member) <= 1e-12 * (1.0 + abs(member) * abs(mu)));
  }
}

TEST_CASE("distinct slice planes meet only in the reals") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    // two random planes, kept away from coincidence
    const UnitImaginary m(gauss_quaternion(rng) + Quaternion{0, 0, 2, 0});
    Quaternion raw = gauss_quaternion(rng);
    raw = raw - m.value() * dot(m.value(), raw);
    if (imag_norm(raw) < 0.1) continue;
    const UnitImaginary n(raw);

    // genuinely imaginary members of C_m stay out of C_n
    const double beta = 0.1 + std::fabs(g(rng));
    const Quaternion q = Quaternion{g(rng)} + m.value() * beta;
    CHECK(slice_membership(q, m, 1e-12 * (1.0 + abs(q))));
    CHECK_FALSE(slice_membership(q, n, 1e-6));

    // while real values live in every plane
    const Quaternion r{g(rng)};
    CHECK(slice_membership(r, m, 1e-12));
    CHECK(slice_membership(r, n, 1e-12));
  }
}

TEST_CASE("unit imaginary construction") {
  const UnitImaginary u(Quaternion{5, 3, 4, 0});
  CHECK(real_part(u.value()) == 0.0);
  CHECK(std::fabs(abs(u.value()) - 1.0) <= 1e-15);
  CHECK(abs(u.value() * u.value() + Quaternion::one()) <= 1e-15);
  CHECK_THROWS_AS(UnitImaginary(Quaternion{1, 1e-9, 0, 0}),
                  std::invalid_argument);
}
