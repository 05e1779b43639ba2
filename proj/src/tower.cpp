#include "qspectral/tower.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qspectral/random.hpp"

namespace qspectral {

Quaternion DiagonalSymbol::at(std::size_t k) const {
  const double kd = static_cast<double>(k);
  switch (family) {
    case Family::kTimesM:
      return m.value() * kd;
    case Family::kPlusKM:
      return Quaternion{kd} + m.value() * kd;
    case Family::Custom:
      if (k >= 1 && k <= custom_prefix.size()) return custom_prefix[k - 1];
      return m.value() * kd;
  }
  throw std::logic_error("DiagonalSymbol: unknown family");
}

DiagonalSymbol DiagonalSymbol::parse_family(const std::string& name,
                                            const UnitImaginary& m) {
  DiagonalSymbol symbol;
  symbol.m = m;
  if (name == "k_times_m")
    symbol.family = Family::kTimesM;
  else if (name == "k_plus_km")
    symbol.family = Family::kPlusKM;
  else if (name == "custom")
    symbol.family = Family::Custom;
  else
    throw std::invalid_argument("DiagonalSymbol: unknown family '" + name +
                                "'");
  return symbol;
}

std::string DiagonalSymbol::family_name() const {
  switch (family) {
    case Family::kTimesM: return "k_times_m";
    case Family::kPlusKM: return "k_plus_km";
    case Family::Custom: return "custom";
  }
  return "?";
}

TruncationTower build_tower(const DiagonalSymbol& symbol,
                            const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("build_tower: no sizes");
  for (std::size_t s = 1; s < sizes.size(); ++s)
    if (sizes[s] <= sizes[s - 1])
      throw std::invalid_argument("build_tower: sizes must be strictly increasing");
  TruncationTower tower{symbol, sizes, {}};
  for (std::size_t size : sizes) {
    std::vector<Quaternion> diag(size);
    for (std::size_t k = 1; k <= size; ++k) diag[k - 1] = symbol.at(k);
    tower.levels.push_back(QMatrix::diagonal(diag));
  }
  return tower;
}

UnboundednessSignature unboundedness_signature(const TruncationTower& tower,
                                               const SliceFrame& frame) {
  if (tower.levels.empty())
    throw std::invalid_argument("unboundedness_signature: empty tower");
  UnboundednessSignature sig;
  for (std::size_t l = 0; l < tower.levels.size(); ++l) {
    const QMatrix& t = tower.levels[l];
    UnboundednessLevel level;
    level.size = tower.sizes[l];
    level.operator_norm = operator_norm(frame, t);
    level.z_norm = operator_norm(frame, z_transform(t));
    const ComplexStructure j = construct_j(t, frame);
    level.j_commutation =
        commutator_norm(j.j, t) / std::max(1.0, frobenius_norm(t));
    sig.levels.push_back(level);
  }
  sig.norm_growth_unbounded = true;
  sig.z_norms_below_one = true;
  sig.z_norms_monotone = true;
  for (std::size_t l = 0; l < sig.levels.size(); ++l) {
    if (sig.levels[l].z_norm >= 1.0) sig.z_norms_below_one = false;
    if (l == 0) continue;
    if (sig.levels[l].operator_norm <=
        sig.levels[l - 1].operator_norm + 1e-12)
      sig.norm_growth_unbounded = false;
    if (sig.levels[l].z_norm < sig.levels[l - 1].z_norm - 1e-12)
      sig.z_norms_monotone = false;
  }
  return sig;
}

namespace {

QVector pad(const QVector& x, std::size_t n) {
  QVector out(n);
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j];
  return out;
}

}  // namespace

ConsistencyReport measure_consistency(const TruncationTower& tower,
                                      const SliceFrame& frame,
                                      std::size_t trials, std::uint64_t seed) {
  if (tower.levels.empty())
    throw std::invalid_argument("measure_consistency: empty tower");
  ConsistencyReport report;
  report.domain_note =
      "domain emulated by finitely supported vectors over growing "
      "truncations; closedness of the full operator is not checked";

  std::mt19937_64 rng(seed);
  std::vector<QSpectralMeasure> measures;
  measures.reserve(tower.levels.size());
  for (const QMatrix& t : tower.levels)
    measures.push_back(build_measure(t, frame));

  for (std::size_t l = 0; l + 1 < tower.levels.size(); ++l) {
    const std::size_t small_n = tower.sizes[l];
    const std::size_t large_n = tower.sizes[l + 1];
    const QMatrix& t_small = tower.levels[l];
    const QMatrix& t_large = tower.levels[l + 1];
    ConsistencyPair pair{small_n, large_n, 0.0, 0.0, 0.0};

    // Regions: a snug rectangle around each of the first small_n spectral
    // classes, plus one rectangle avoiding all of them.
    std::vector<Region> inside;
    for (const SpectralAtom& atom : measures[l].atoms) {
      const double a = atom.lambda.alpha, b = atom.lambda.beta;
      inside.push_back(Region::rectangle(a - 0.25, a + 0.25,
                                         std::max(0.0, b - 0.25), b + 0.25));
    }
    double far_alpha = 0.0;
    for (const SpectralAtom& atom : measures[l + 1].atoms)
      far_alpha = std::max(far_alpha, std::fabs(atom.lambda.alpha));
    double far_beta = 0.0;
    for (const SpectralAtom& atom : measures[l + 1].atoms)
      far_beta = std::max(far_beta, atom.lambda.beta);
    const Region excluded = Region::rectangle(far_alpha + 1.0, far_alpha + 2.0,
                                              far_beta + 1.0, far_beta + 2.0);

    for (std::size_t trial = 0; trial < trials; ++trial) {
      const QVector x_small = random_qvector(small_n, rng);
      const QVector y_small = random_qvector(small_n, rng);
      const QVector x_large = pad(x_small, large_n);
      const QVector y_large = pad(y_small, large_n);
      const double vec_scale =
          std::max(1.0, norm(x_small) * norm(y_small));

      pair.matrix_element_residual = std::max(
          pair.matrix_element_residual,
          abs(inner(x_small, t_small * y_small) -
              inner(x_large, t_large * y_large)) /
              (vec_scale * std::max(1.0, operator_norm(frame, t_large))));
      for (const Region& region : inside) {
        pair.measure_residual = std::max(
            pair.measure_residual,
            abs(scalar_measure(measures[l], x_small, y_small, region) -
                scalar_measure(measures[l + 1], x_large, y_large, region)) /
                vec_scale);
      }
      pair.excluded_region_residual = std::max(
          pair.excluded_region_residual,
          std::max(
              abs(scalar_measure(measures[l], x_small, y_small, excluded)),
              abs(scalar_measure(measures[l + 1], x_large, y_large,
                                 excluded))) /
              vec_scale);
    }
    report.max_residual = std::max(
        {report.max_residual, pair.matrix_element_residual,
         pair.measure_residual, pair.excluded_region_residual});
    report.pairs.push_back(pair);
  }
  return report;
}

}  // namespace qspectral
