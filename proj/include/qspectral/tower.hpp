#pragma once

#include <string>
#include <vector>

#include "qspectral/measure.hpp"

namespace qspectral {

/// Rule k -> q_k generating the diagonal of an operator on the square
/// summable sequence space, studied through finite truncations. Built in
/// families grow without bound; a custom prefix is extended by the k*m rule.
struct DiagonalSymbol {
  enum class Family { kTimesM, kPlusKM, Custom };

  Family family = Family::kTimesM;
  std::vector<Quaternion> custom_prefix;
  UnitImaginary m = UnitImaginary::i();

  Quaternion at(std::size_t k) const;  // 1-based
  static DiagonalSymbol parse_family(const std::string& name,
                                     const UnitImaginary& m);
  std::string family_name() const;
};

/// Nested diagonal truncations T_n = diag(q_1 .. q_n); each level is the top
/// left corner of the next and every level is normal.
struct TruncationTower {
  DiagonalSymbol symbol;
  std::vector<std::size_t> sizes;
  std::vector<QMatrix> levels;
};

TruncationTower build_tower(const DiagonalSymbol& symbol,
                            const std::vector<std::size_t>& sizes);

inline std::vector<std::size_t> default_tower_sizes() {
  return {4, 8, 16, 32, 64};
}

struct UnboundednessLevel {
  std::size_t size = 0;
  double operator_norm = 0.0;
  double z_norm = 0.0;
  double j_commutation = 0.0;  // |J T - T J|_F / max(1, |T|_F)
};

/// Norm growth along the tower: |T_n| increases without bound for the built
/// in families while |Z_{T_n}| < 1 approaches 1, and the complex structure
/// commutes with every level.
struct UnboundednessSignature {
  std::vector<UnboundednessLevel> levels;
  bool norm_growth_unbounded = false;  // strictly increasing |T_n|
  bool z_norms_below_one = false;
  bool z_norms_monotone = false;
};

UnboundednessSignature unboundedness_signature(const TruncationTower& tower,
                                               const SliceFrame& frame);

struct ConsistencyPair {
  std::size_t small_size = 0;
  std::size_t large_size = 0;
  double matrix_element_residual = 0.0;  // <x|T_n y> vs <x|T_m y>
  double measure_residual = 0.0;         // F^(n)_{x,y} vs F^(m)_{x,y}
  double excluded_region_residual = 0.0;
};

struct ConsistencyReport {
  std::vector<ConsistencyPair> pairs;
  double max_residual = 0.0;
  std::string domain_note;
};

/// For vectors supported in the smaller truncation, matrix elements and
/// scalar measures agree across tower levels on regions drawn inside the
/// smaller spectrum.
ConsistencyReport measure_consistency(const TruncationTower& tower,
                                      const SliceFrame& frame,
                                      std::size_t trials = 8,
                                      std::uint64_t seed = 11);

}  // namespace qspectral
