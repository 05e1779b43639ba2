#include "qspectral/slice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <cstdio>
#include <string>

namespace qspectral {

namespace {

struct FoldedValue {
  double alpha;
  double beta;  // |Im|, so conjugate pairs coincide
};

// Greedy union of eigenvalues within tol in class distance.
std::vector<std::size_t> cluster_by_distance(
    const std::vector<FoldedValue>& points, double tol) {
  std::vector<std::size_t> parent(points.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (std::hypot(points[i].alpha - points[j].alpha,
                     points[i].beta - points[j].beta) <= tol)
        parent[find(i)] = find(j);
    }
  for (std::size_t i = 0; i < points.size(); ++i) parent[i] = find(i);
  return parent;
}

// Orthonormal selection respecting the symplectic structure: every accepted
// vector is orthogonalized against the previously chosen ones and their
// S-images, so the quaternionic columns recovered from them come out
// orthonormal. Picks greedily by largest remaining norm.
std::vector<CVector> structured_select(std::vector<CVector> pool,
                                       std::size_t want) {
  std::vector<CVector> chosen;
  chosen.reserve(want);
  std::vector<CVector> shadows;  // S-images of chosen
  auto project_out = [&](CVector w) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const CVector& z : chosen) w -= z * z.dot(w);
      for (const CVector& z : shadows) w -= z * z.dot(w);
    }
    return w;
  };
  std::vector<bool> used(pool.size(), false);
  while (chosen.size() < want) {
    double best_norm = -1.0;
    std::size_t best = 0;
    CVector best_vec;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (used[c]) continue;
      CVector w = project_out(pool[c]);
      const double nw = w.norm();
      if (nw > best_norm) {
        best_norm = nw;
        best = c;
        best_vec = std::move(w);
      }
    }
    if (best_norm < 1e-3)
      throw std::runtime_error(
          "spectral_decompose: eigenvector cluster is numerically rank "
          "deficient");
    used[best] = true;
    best_vec /= best_norm;
    chosen.push_back(best_vec);
    shadows.push_back(symplectic_conjugate(best_vec));
  }
  return chosen;
}

double normality_check(const QMatrix& t, double tol, const char* who) {
  const OperatorClass flags = classify(t, tol);
  if (!flags.normal)
    throw normality_error(std::string(who) +
                              ": operator is not normal (Frobenius residual " +
                              std::to_string(flags.normal_residual) + ")",
                          flags.normal_residual);
  return flags.normal_residual;
}

}  // namespace

double cluster_tolerance(const QMatrix& t) {
  return std::max(1e-8, 1e-12 * frobenius_norm(t));
}

std::vector<Quaternion> EigenSystem::value_quaternions() const {
  std::vector<Quaternion> qs;
  qs.reserve(values.size());
  for (const SliceComplex& v : values) qs.push_back(v.embed());
  return qs;
}

EigenSystem spectral_decompose(const QMatrix& t, const SliceFrame& frame,
                               double tol) {
  if (!t.is_square())
    throw std::invalid_argument("spectral_decompose: square matrix required");
  EigenSystem out;
  out.normality_residual = normality_check(t, tol, "spectral_decompose");

  const std::size_t n = t.rows();
  const CMatrix chi = complex_embed(t, frame);
  const ComplexNormalEigen ce = eigendecompose_normal(chi);

  std::vector<FoldedValue> folded(2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k)
    folded[k] = {ce.values(k).real(), std::fabs(ce.values(k).imag())};

  const double merge_tol = cluster_tolerance(t);
  const std::vector<std::size_t> root = cluster_by_distance(folded, merge_tol);

  struct ClusterAccum {
    std::vector<std::size_t> members;
    double alpha_sum = 0.0, beta_sum = 0.0;
  };
  std::vector<std::size_t> roots;
  std::vector<ClusterAccum> accums;
  auto accum_index = [&](std::size_t r) {
    for (std::size_t c = 0; c < roots.size(); ++c)
      if (roots[c] == r) return c;
    roots.push_back(r);
    accums.emplace_back();
    return roots.size() - 1;
  };
  for (std::size_t k = 0; k < 2 * n; ++k) {
    ClusterAccum& acc = accums[accum_index(root[k])];
    acc.members.push_back(k);
    acc.alpha_sum += folded[k].alpha;
    acc.beta_sum += folded[k].beta;
  }

  struct Cluster {
    SliceComplex rep;
    std::vector<std::size_t> members;
  };
  std::vector<Cluster> clusters;
  for (ClusterAccum& acc : accums) {
    const double count = static_cast<double>(acc.members.size());
    double beta = acc.beta_sum / count;
    if (beta <= merge_tol) beta = 0.0;  // sphere degenerates to a real point
    clusters.push_back(Cluster{
        SliceComplex(acc.alpha_sum / count, beta, frame.m),
        std::move(acc.members)});
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) {
              if (a.rep.alpha != b.rep.alpha) return a.rep.alpha < b.rep.alpha;
              return a.rep.beta < b.rep.beta;
            });

  std::vector<CVector> chosen;
  chosen.reserve(n);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const Cluster& cluster = clusters[c];
    if (cluster.members.size() % 2 != 0)
      throw std::runtime_error(
          "spectral_decompose: eigenvalue cluster of odd size " +
          std::to_string(cluster.members.size()) +
          " breaks the conjugation pairing");
    const std::size_t mult = cluster.members.size() / 2;

    std::vector<CVector> pool;
    pool.reserve(cluster.members.size());
    for (std::size_t idx : cluster.members) {
      CVector w = ce.vectors.col(static_cast<Eigen::Index>(idx));
      // Mirror lower half plane eigenvectors into the upper half plane side.
      if (ce.values(static_cast<Eigen::Index>(idx)).imag() < 0.0)
        w = symplectic_conjugate(w);
      pool.push_back(std::move(w));
    }
    for (CVector& w : structured_select(std::move(pool), mult)) {
      chosen.push_back(std::move(w));
      out.values.push_back(cluster.rep);
      out.cluster_of.push_back(c);
    }
    out.clusters.push_back(cluster.rep);
    out.multiplicities.push_back(mult);
  }
  if (chosen.size() != n)
    throw std::runtime_error("spectral_decompose: extracted " +
                             std::to_string(chosen.size()) +
                             " eigenvectors for dimension " +
                             std::to_string(n));

  // Columns from different clusters can inherit a small non-orthogonality
  // when eigenvalue gaps are tight; a global structured sweep removes it
  // while rotating each column by no more than that same small angle.
  std::vector<QVector> columns;
  columns.reserve(n);
  std::vector<CVector> shadows;
  shadows.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    CVector w = std::move(chosen[k]);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t p = 0; p < k; ++p) {
        const CVector& z = chosen[p];
        w -= z * z.dot(w);
        const CVector& sz = shadows[p];
        w -= sz * sz.dot(w);
      }
    const double nw = w.norm();
    if (nw < 0.5)
      throw std::runtime_error(
          "spectral_decompose: eigenvector basis collapsed during "
          "orthonormalization");
    w /= nw;
    chosen[k] = std::move(w);
    shadows.push_back(symplectic_conjugate(chosen[k]));
    columns.push_back(vector_unembed(chosen[k], frame));
  }

  out.basis = QMatrix::from_columns(columns);
  const double scale = std::max(1.0, frobenius_norm(t));
  out.eigen_residual =
      frobenius_norm(t * out.basis -
                     scale_columns(out.basis, out.value_quaternions())) /
      scale;
  out.unitarity_residual = frobenius_norm(adjoint(out.basis) * out.basis -
                                          QMatrix::identity(n));
  return out;
}

EigenSystem randomize_within_clusters(const EigenSystem& system,
                                      const SliceFrame& frame,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  EigenSystem out = system;
  const std::size_t n = system.basis.rows();

  for (std::size_t c = 0; c < system.clusters.size(); ++c) {
    std::vector<std::size_t> block;
    for (std::size_t col = 0; col < n; ++col)
      if (system.cluster_of[col] == c) block.push_back(col);
    const Eigen::Index d = static_cast<Eigen::Index>(block.size());
    if (d < 1) continue;
    CMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    const CMatrix w = Eigen::HouseholderQR<CMatrix>(g).householderQ();
    for (std::size_t row = 0; row < n; ++row) {
      std::vector<Quaternion> mixed(block.size());
      for (Eigen::Index a = 0; a < d; ++a) {
        Quaternion acc;
        for (Eigen::Index b = 0; b < d; ++b)
          acc += system.basis(row, block[static_cast<std::size_t>(b)]) *
                 frame.embed(w(b, a));
        mixed[static_cast<std::size_t>(a)] = acc;
      }
      for (Eigen::Index a = 0; a < d; ++a)
        out.basis(row, block[static_cast<std::size_t>(a)]) =
            mixed[static_cast<std::size_t>(a)];
    }
  }
  out.unitarity_residual = frobenius_norm(adjoint(out.basis) * out.basis -
                                          QMatrix::identity(n));
  return out;
}

ComplexStructure construct_j(const EigenSystem& system,
                             const SliceFrame& frame) {
  const std::size_t n = system.basis.rows();
  const std::vector<Quaternion> diag_m(n, frame.m.value());
  ComplexStructure s;
  s.j = scale_columns(system.basis, diag_m) * adjoint(system.basis);
  s.generator = system.basis;
  s.anti_self_adjoint_residual = frobenius_norm(adjoint(s.j) + s.j);
  s.unitarity_residual =
      frobenius_norm(adjoint(s.j) * s.j - QMatrix::identity(n));
  return s;
}

ComplexStructure construct_j(const QMatrix& t, const SliceFrame& frame,
                             double tol) {
  const EigenSystem system = spectral_decompose(t, frame, tol);
  ComplexStructure s = construct_j(system, frame);
  const double scale = std::max(1.0, frobenius_norm(t));
  s.commutation_residual =
      std::max(commutator_norm(s.j, t), commutator_norm(s.j, adjoint(t))) /
      scale;
  return s;
}

SliceSplit split(const QVector& x, const ComplexStructure& structure,
                 const UnitImaginary& m) {
  const QVector jx_m = (structure.j * x) * m.value();
  SliceSplit parts;
  parts.plus = (x - jx_m) * 0.5;
  parts.minus = (x + jx_m) * 0.5;
  return parts;
}

SliceBasis slice_basis(const ComplexStructure& structure,
                       const SliceFrame& frame, double tol) {
  const QMatrix& j = structure.j;
  if (!j.is_square())
    throw std::invalid_argument("slice_basis: square J required");
  const std::size_t n = j.rows();
  const double jn = frobenius_norm(adjoint(j) + j) +
                    frobenius_norm(adjoint(j) * j - QMatrix::identity(n));
  if (jn > tol * 10.0 * std::max(1.0, std::sqrt(static_cast<double>(n))))
    throw std::invalid_argument(
        "slice_basis: J is not anti self adjoint unitary (residual " +
        std::to_string(jn) + ")");

  if (structure.generator) return SliceBasis{
      HilbertBasis(structure.generator->columns()), frame};

  // External J: project coordinate vectors (and their Phi images) onto the
  // +m eigenspace and orthonormalize. The right span over C_m of the
  // projections is the whole slice, so n vectors always survive.
  std::vector<QVector> kept;
  const Quaternion nv = frame.n.value();
  for (std::size_t pass = 0; pass < 2 && kept.size() < n; ++pass) {
    for (std::size_t c = 0; c < n && kept.size() < n; ++c) {
      QVector candidate = QVector::unit(n, c);
      if (pass == 1) candidate = candidate * nv;
      QVector v = split(candidate, structure, frame.m).plus;
      for (int sweep = 0; sweep < 2; ++sweep)
        for (const QVector& z : kept) v = v - z * inner(z, v);
      const double rem = norm(v);
      if (rem > 1e-6) kept.push_back(v * (1.0 / rem));
    }
  }
  if (kept.size() != n)
    throw std::runtime_error("slice_basis: +m eigenspace of J has defective "
                             "dimension");
  return SliceBasis{HilbertBasis(std::move(kept)), frame};
}

CMatrix induce_complex(const QMatrix& t, const SliceBasis& basis,
                       double tol) {
  const std::size_t n = basis.plus_basis.size();
  if (t.cols() != basis.plus_basis.dimension())
    throw std::invalid_argument("induce_complex: dimension mismatch");
  const double scale = std::max(1.0, frobenius_norm(t));
  CMatrix a(n, n);
  std::vector<QVector> images;
  images.reserve(n);
  for (std::size_t b = 0; b < n; ++b) images.push_back(t * basis.plus_basis[b]);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Quaternion entry = inner(basis.plus_basis[r], images[c]);
      const std::complex<double> off = basis.frame.component_2(entry);
      if (std::abs(off) > tol * scale) {
        char defect[32];
        std::snprintf(defect, sizeof(defect), "%.3e", std::abs(off));
        throw std::domain_error("induce_complex: entry (" + std::to_string(r) +
                                "," + std::to_string(c) + ") leaves C_m by " +
                                defect + "; J and T do not commute");
      }
      a(r, c) = basis.frame.component_1(entry);
    }
  return a;
}

QMatrix extend_operator(const CMatrix& a, const SliceBasis& basis) {
  const std::size_t n = basis.plus_basis.size();
  if (static_cast<std::size_t>(a.rows()) != n ||
      static_cast<std::size_t>(a.cols()) != n)
    throw std::invalid_argument("extend_operator: dimension mismatch");
  QMatrix aq(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      aq(r, c) = basis.frame.embed(a(static_cast<Eigen::Index>(r),
                                     static_cast<Eigen::Index>(c)));
  const QMatrix z = basis.as_matrix();
  return z * aq * adjoint(z);
}

std::vector<SpectralClass> spherical_spectrum(const QMatrix& t,
                                              const SliceFrame& frame,
                                              double tol) {
  const EigenSystem system = spectral_decompose(t, frame, tol);
  std::vector<SpectralClass> spectrum;
  spectrum.reserve(system.clusters.size());
  for (std::size_t c = 0; c < system.clusters.size(); ++c) {
    SpectralClass entry;
    entry.representative = system.clusters[c];
    entry.multiplicity = system.multiplicities[c];
    entry.delta_min_singular_value =
        min_singular_value(delta(t, entry.representative.embed()));
    spectrum.push_back(entry);
  }
  return spectrum;
}

}  // namespace qspectral
