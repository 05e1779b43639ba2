#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qspectral/measure.hpp"
#include "qspectral/tower.hpp"

namespace qspectral {

struct PropertyResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<PropertyResult> properties;
  bool pass = true;
  std::string first_failure;
};

/// Runs the full invariant suite against a normal operator: quaternion
/// algebra, Hilbert space identities, the operator embedding, the slice
/// decomposition, the spectral measure laws and the truncation tower.
/// tol_base rescales the default thresholds (1 keeps them); the seed drives
/// every random probe, so reports are reproducible.
VerificationReport run_verification(const QMatrix& t, const SliceFrame& frame,
                                    double tol_base = 1.0,
                                    std::uint64_t seed = 42);

}  // namespace qspectral
