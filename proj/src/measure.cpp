#include "qspectral/measure.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <variant>

namespace qspectral {

// ---------------------------------------------------------------------------
// Region

struct Region::Node {
  struct Empty {};
  struct Full {};
  struct Points {
    std::vector<SliceComplex> ps;
  };
  struct Rect {
    double alpha_lo, alpha_hi, beta_lo, beta_hi;
  };
  struct Union {
    std::shared_ptr<const Node> a, b;
  };
  struct Intersection {
    std::shared_ptr<const Node> a, b;
  };
  struct Complement {
    std::shared_ptr<const Node> inner;
  };
  std::variant<Empty, Full, Points, Rect, Union, Intersection, Complement> v;
};

Region Region::empty() {
  return Region(std::make_shared<Node>(Node{Node::Empty{}}));
}
Region Region::full() {
  return Region(std::make_shared<Node>(Node{Node::Full{}}));
}
Region Region::points(std::vector<SliceComplex> ps) {
  return Region(std::make_shared<Node>(Node{Node::Points{std::move(ps)}}));
}
Region Region::rectangle(double alpha_lo, double alpha_hi, double beta_lo,
                         double beta_hi) {
  if (alpha_hi < alpha_lo || beta_hi < beta_lo)
    throw std::invalid_argument("Region::rectangle: empty bounds");
  if (beta_lo < 0.0)
    throw std::invalid_argument(
        "Region::rectangle: beta must stay in the closed upper half plane");
  return Region(std::make_shared<Node>(
      Node{Node::Rect{alpha_lo, alpha_hi, beta_lo, beta_hi}}));
}
Region Region::unite(const Region& other) const {
  return Region(std::make_shared<Node>(Node{Node::Union{node_, other.node_}}));
}
Region Region::intersect(const Region& other) const {
  return Region(
      std::make_shared<Node>(Node{Node::Intersection{node_, other.node_}}));
}
Region Region::complement() const {
  return Region(std::make_shared<Node>(Node{Node::Complement{node_}}));
}

bool Region::contains(const SliceComplex& lambda) const {
  const Node& n = *node_;
  if (std::holds_alternative<Node::Empty>(n.v)) return false;
  if (std::holds_alternative<Node::Full>(n.v)) return true;
  if (const auto* ps = std::get_if<Node::Points>(&n.v)) {
    for (const SliceComplex& p : ps->ps)
      if (distance(lambda, p) <= 1e-9 * (1.0 + std::abs(p.to_complex())))
        return true;
    return false;
  }
  if (const auto* r = std::get_if<Node::Rect>(&n.v)) {
    return lambda.alpha >= r->alpha_lo && lambda.alpha <= r->alpha_hi &&
           lambda.beta >= r->beta_lo && lambda.beta <= r->beta_hi;
  }
  if (const auto* u = std::get_if<Node::Union>(&n.v))
    return Region(u->a).contains(lambda) || Region(u->b).contains(lambda);
  if (const auto* i = std::get_if<Node::Intersection>(&n.v))
    return Region(i->a).contains(lambda) && Region(i->b).contains(lambda);
  const auto& c = std::get<Node::Complement>(n.v);
  return !Region(c.inner).contains(lambda);
}

// ---------------------------------------------------------------------------
// Measure construction

QSpectralMeasure build_measure(const QMatrix& t, const SliceFrame& frame,
                               double tol, std::uint64_t seed) {
  EigenSystem system = spectral_decompose(t, frame, tol);
  if (seed != 0) system = randomize_within_clusters(system, frame, seed);

  QSpectralMeasure measure{
      {}, frame, construct_j(system, frame), SliceBasis{
          HilbertBasis(system.basis.columns()), frame}, {},
      system.normality_residual};
  const double scale = std::max(1.0, frobenius_norm(t));
  measure.structure.commutation_residual =
      std::max(commutator_norm(measure.structure.j, t),
               commutator_norm(measure.structure.j, adjoint(t))) /
      scale;

  const std::size_t n = t.rows();
  for (std::size_t c = 0; c < system.clusters.size(); ++c) {
    // P = U Sel U*, with Sel selecting the cluster's columns.
    std::vector<Quaternion> sel(n);
    for (std::size_t col = 0; col < n; ++col)
      if (system.cluster_of[col] == c) sel[col] = Quaternion::one();
    const QMatrix projector =
        scale_columns(system.basis, sel) * adjoint(system.basis);
    SpectralAtom atom;
    atom.lambda = system.clusters[c];
    atom.rank = system.multiplicities[c];
    atom.projector_residual =
        std::max(frobenius_norm(projector * projector - projector),
                 frobenius_norm(adjoint(projector) - projector));
    atom.projector = projector;
    measure.atoms.push_back(std::move(atom));
    measure.complex_projectors.push_back(
        induce_complex(measure.atoms.back().projector, measure.basis));
  }
  return measure;
}

QMatrix evaluate(const QSpectralMeasure& measure, const Region& region) {
  const std::size_t n = measure.dimension();
  QMatrix acc = QMatrix::zero(n, n);
  for (const SpectralAtom& atom : measure.atoms)
    if (region.contains(atom.lambda)) acc = acc + atom.projector;
  return acc;
}

Quaternion scalar_measure(const QSpectralMeasure& measure, const QVector& x,
                          const QVector& y, const Region& region) {
  if (x.size() != measure.dimension() || y.size() != measure.dimension())
    throw std::invalid_argument("scalar_measure: dimension mismatch");
  return inner(x, evaluate(measure, region) * y);
}

namespace {

// E(Omega) b for b in the slice, through the induced complex projectors:
// expand b over the basis, apply the complex matrix, reassemble.
QVector apply_complex_measure(const QSpectralMeasure& measure,
                              const Region& region, const QVector& b) {
  const HilbertBasis& basis = measure.basis.plus_basis;
  const std::size_t n = basis.size();
  CVector coords(n);
  for (std::size_t a = 0; a < n; ++a)
    coords(static_cast<Eigen::Index>(a)) =
        measure.frame.component_1(inner(basis[a], b));
  CVector image = CVector::Zero(n);
  for (std::size_t i = 0; i < measure.atoms.size(); ++i)
    if (region.contains(measure.atoms[i].lambda))
      image += measure.complex_projectors[i] * coords;
  QVector out(b.size());
  for (std::size_t a = 0; a < n; ++a)
    out = out + basis[a] * measure.frame.embed(
                               image(static_cast<Eigen::Index>(a)));
  return out;
}

}  // namespace

Quaternion scalar_measure_via_slices(const QSpectralMeasure& measure,
                                     const QVector& x, const QVector& y,
                                     const Region& region) {
  if (x.size() != measure.dimension() || y.size() != measure.dimension())
    throw std::invalid_argument("scalar_measure_via_slices: dimension mismatch");
  const Quaternion nv = measure.frame.n.value();
  const SliceSplit xs = split(x, measure.structure, measure.frame.m);
  const SliceSplit ys = split(y, measure.structure, measure.frame.m);

  const QVector w1 = apply_complex_measure(measure, region, ys.plus);
  const QVector w2 = apply_complex_measure(measure, region, ys.minus * nv);

  return inner(xs.plus, w1) - inner(xs.plus, w2) * nv + inner(xs.minus, w1) -
         inner(xs.minus, w2) * nv;
}

Quaternion integrate_representation(const QSpectralMeasure& measure,
                                    const QVector& x, const QVector& y) {
  if (x.size() != measure.dimension() || y.size() != measure.dimension())
    throw std::invalid_argument(
        "integrate_representation: dimension mismatch");
  Quaternion acc;
  for (const SpectralAtom& atom : measure.atoms) {
    const QVector py = atom.projector * y;
    acc += inner(x, py) * atom.lambda.alpha;
    acc += inner(x, measure.structure.j * py) * atom.lambda.beta;
  }
  return acc;
}

QMatrix reconstruct_operator(const QSpectralMeasure& measure) {
  const std::size_t n = measure.dimension();
  QMatrix acc = QMatrix::zero(n, n);
  for (const SpectralAtom& atom : measure.atoms)
    acc = acc + atom.projector * atom.lambda.alpha +
          measure.structure.j * atom.projector * atom.lambda.beta;
  return acc;
}

QMatrix functional_calculus(
    const QSpectralMeasure& measure,
    const std::function<std::complex<double>(std::complex<double>)>& f) {
  const std::size_t n = measure.dimension();
  QMatrix acc = QMatrix::zero(n, n);
  for (const SpectralAtom& atom : measure.atoms) {
    const std::complex<double> value = f(atom.lambda.to_complex());
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
      throw std::domain_error(
          "functional_calculus: f is undefined at a spectral point");
    acc = acc + atom.projector * value.real() +
          measure.structure.j * atom.projector * value.imag();
  }
  return acc;
}

CommutantReport commutant_check(const QSpectralMeasure& measure,
                                const QMatrix& s, const QMatrix& t,
                                double hypothesis_tol, double pass_tol,
                                std::size_t rectangles, std::uint64_t seed) {
  CommutantReport report;
  const double scale =
      std::max(1.0, frobenius_norm(s)) * std::max(1.0, frobenius_norm(t));
  report.hypothesis_residual_t = commutator_norm(s, t);
  report.hypothesis_residual_tstar = commutator_norm(s, adjoint(t));
  if (report.hypothesis_residual_t > hypothesis_tol * scale ||
      report.hypothesis_residual_tstar > hypothesis_tol * scale)
    throw commutant_hypothesis_error(
        "commutant_check: S does not commute with T and T* (residuals " +
            std::to_string(report.hypothesis_residual_t) + ", " +
            std::to_string(report.hypothesis_residual_tstar) + ")",
        report.hypothesis_residual_t, report.hypothesis_residual_tstar);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double alpha_lo = -1.0, alpha_hi = 1.0, beta_hi = 1.0;
  for (const SpectralAtom& atom : measure.atoms) {
    alpha_lo = std::min(alpha_lo, atom.lambda.alpha - 1.0);
    alpha_hi = std::max(alpha_hi, atom.lambda.alpha + 1.0);
    beta_hi = std::max(beta_hi, atom.lambda.beta + 1.0);
  }

  std::vector<Region> regions;
  for (const SpectralAtom& atom : measure.atoms)
    regions.push_back(Region::point(atom.lambda));
  for (std::size_t r = 0; r < rectangles; ++r) {
    double a0 = alpha_lo + (alpha_hi - alpha_lo) * unit(rng);
    double a1 = alpha_lo + (alpha_hi - alpha_lo) * unit(rng);
    double b0 = beta_hi * unit(rng);
    double b1 = beta_hi * unit(rng);
    regions.push_back(Region::rectangle(std::min(a0, a1), std::max(a0, a1),
                                        std::min(b0, b1), std::max(b0, b1)));
  }

  const double s_scale = std::max(1.0, frobenius_norm(s));
  for (const Region& region : regions) {
    const QMatrix f = evaluate(measure, region);
    report.max_commutator =
        std::max(report.max_commutator, commutator_norm(s, f) / s_scale);
  }
  report.regions_checked = regions.size();
  report.pass = report.max_commutator <= pass_tol;
  return report;
}

}  // namespace qspectral
