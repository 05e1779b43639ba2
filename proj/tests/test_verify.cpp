#include <doctest.h>

#include "qspectral/random.hpp"
#include "qspectral/verify.hpp"

using namespace qspectral;

TEST_CASE("verification suite passes on a random normal operator") {
  const SliceFrame frame = SliceFrame::standard();
  Rng rng(42);
  const QMatrix t = random_normal_operator(6, frame, rng);
  const VerificationReport report = run_verification(t, frame, 1.0, 42);
  for (const PropertyResult& property : report.properties) {
    INFO(property.name, " residual=", property.residual,
         " tolerance=", property.tolerance);
    CHECK(property.pass);
  }
  CHECK(report.pass);
  CHECK(report.first_failure.empty());
  // the suite covers all six subsystems
  CHECK(report.properties.size() > 40);
}

TEST_CASE("verification suite works in a rotated frame") {
  const SliceFrame frame =
      SliceFrame::around(UnitImaginary(Quaternion{0, 1, 1, 1}));
  Rng rng(9);
  const QMatrix t = random_normal_operator(4, frame, rng);
  const VerificationReport report = run_verification(t, frame, 1.0, 7);
  for (const PropertyResult& property : report.properties) {
    INFO(property.name, " residual=", property.residual,
         " tolerance=", property.tolerance);
    CHECK(property.pass);
  }
}

TEST_CASE("verification rejects non normal input") {
  QMatrix nilpotent(2, 2);
  nilpotent(0, 1) = Quaternion::one();
  CHECK_THROWS_AS(
      run_verification(nilpotent, SliceFrame::standard(), 1.0, 1),
      normality_error);
}
