#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "qspectral/slice.hpp"

namespace qspectral {

/// A measurable region of the closed upper half plane of C_m, generated by
/// point sets and axis aligned rectangles under complement, union and
/// intersection. Membership is deterministic.
class Region {
 public:
  static Region empty();
  static Region full();
  static Region points(std::vector<SliceComplex> ps);
  static Region point(const SliceComplex& p) { return points({p}); }
  /// [alpha_lo, alpha_hi] x [beta_lo, beta_hi], beta_lo >= 0.
  static Region rectangle(double alpha_lo, double alpha_hi, double beta_lo,
                          double beta_hi);

  Region unite(const Region& other) const;
  Region intersect(const Region& other) const;
  Region complement() const;

  bool contains(const SliceComplex& lambda) const;

 private:
  struct Node;
  explicit Region(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// One atom of the spectral measure: a sphere representative in the closed
/// upper half plane together with the orthogonal projection onto its
/// eigenspace.
struct SpectralAtom {
  SliceComplex lambda;
  QMatrix projector;
  std::size_t rank = 0;
  double projector_residual = 0.0;  // max(|P^2-P|_F, |P*-P|_F)
};

/// The quaternionic spectral measure of a normal operator: finitely many
/// atoms whose projectors resolve the identity, commute with J, and extend
/// the complex spectral projections of the induced operator on the slice.
struct QSpectralMeasure {
  std::vector<SpectralAtom> atoms;
  SliceFrame frame;
  ComplexStructure structure;
  SliceBasis basis;
  std::vector<CMatrix> complex_projectors;  // induced atom projectors
  double normality_residual = 0.0;

  std::size_t dimension() const { return structure.j.rows(); }
};

/// Runs the eigendecomposition, builds J, the slice basis, and one projector
/// per eigenvalue cluster. A nonzero seed re-gauges each cluster's
/// eigenvector block before the projectors are formed; the measure itself
/// does not depend on the gauge.
QSpectralMeasure build_measure(const QMatrix& t, const SliceFrame& frame,
                               double tol = kDefaultTol,
                               std::uint64_t seed = 0);

/// F(Omega) = sum of the projectors of the atoms inside Omega.
QMatrix evaluate(const QSpectralMeasure& measure, const Region& region);

/// The quaternion valued scalar measure F_{x,y}(Omega) = <x|F(Omega)y>.
Quaternion scalar_measure(const QSpectralMeasure& measure, const QVector& x,
                          const QVector& y, const Region& region);

/// The same value assembled from the complex measure on the slice: split
/// x = x1 + x2 and y = y1 + y2 by J and combine
///   E_{x1,y1} - E_{x1,y2 n} n + E_{x2,y1} - E_{x2,y2 n} n,
/// where E acts through the induced complex projectors in slice coordinates.
Quaternion scalar_measure_via_slices(const QSpectralMeasure& measure,
                                     const QVector& x, const QVector& y,
                                     const Region& region);

/// The spectral integral of the identity function: sum_i lambda_i acting on
/// F_{x,y}({lambda_i}) by the left multiplication induced by the measure's
/// Hilbert basis, i.e. lambda = alpha + m beta acts as alpha I + beta J.
/// Equals <x|Ty>.
Quaternion integrate_representation(const QSpectralMeasure& measure,
                                    const QVector& x, const QVector& y);

/// sum_i (alpha_i I + beta_i J) P_i; reconstructs the measured operator.
QMatrix reconstruct_operator(const QSpectralMeasure& measure);

/// f(T) = sum_i (Re f(lambda_i) I + Im f(lambda_i) J) P_i for f defined on
/// the spectral points (values must be finite).
QMatrix functional_calculus(
    const QSpectralMeasure& measure,
    const std::function<std::complex<double>(std::complex<double>)>& f);

/// Raised when commutant_check's hypothesis |ST-TS|, |ST*-T*S| <= tol scale
/// fails; not a failure of the commutation theorem.
class commutant_hypothesis_error : public std::runtime_error {
 public:
  commutant_hypothesis_error(const std::string& what, double res_t,
                             double res_tstar)
      : std::runtime_error(what), residual_t_(res_t),
        residual_tstar_(res_tstar) {}
  double residual_t() const { return residual_t_; }
  double residual_tstar() const { return residual_tstar_; }

 private:
  double residual_t_;
  double residual_tstar_;
};

struct CommutantReport {
  double hypothesis_residual_t = 0.0;
  double hypothesis_residual_tstar = 0.0;
  double max_commutator = 0.0;  // max |S F(Omega) - F(Omega) S|_F / |S|_F
  std::size_t regions_checked = 0;
  bool pass = false;
};

/// Checks S F(Omega) = F(Omega) S over every spectral point and a family of
/// seeded random rectangles, given that S commutes with T and T*.
CommutantReport commutant_check(const QSpectralMeasure& measure,
                                const QMatrix& s, const QMatrix& t,
                                double hypothesis_tol = 1e-8,
                                double pass_tol = 1e-9,
                                std::size_t rectangles = 20,
                                std::uint64_t seed = 7);

}  // namespace qspectral
