#include "qspectral/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qspectral {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

}  // namespace

SliceFrame::SliceFrame(UnitImaginary m_, UnitImaginary n_)
    : m(std::move(m_)), n(std::move(n_)) {
  if (std::fabs(dot(m.value(), n.value())) > 1e-10)
    throw std::invalid_argument("SliceFrame: m and n must be orthogonal in R^4");
}

SliceFrame SliceFrame::around(const UnitImaginary& m) {
  const Quaternion mv = m.value();
  Quaternion candidate = Quaternion::j() - mv * dot(mv, Quaternion::j());
  if (imag_norm(candidate) < 1e-6)
    candidate = Quaternion::k() - mv * dot(mv, Quaternion::k());
  return SliceFrame(m, UnitImaginary(candidate));
}

std::complex<double> SliceFrame::component_1(const Quaternion& q) const {
  return {q.w, dot(m.value(), q)};
}

std::complex<double> SliceFrame::component_2(const Quaternion& q) const {
  return {dot(n.value(), q), dot(third(), q)};
}

Quaternion SliceFrame::assemble(std::complex<double> z1,
                                std::complex<double> z2) const {
  return Quaternion{z1.real()} + m.value() * z1.imag() +
         n.value() * z2.real() + third() * z2.imag();
}

Quaternion SliceFrame::embed(std::complex<double> z) const {
  return Quaternion{z.real()} + m.value() * z.imag();
}

ComplexPairForm pair_form(const QMatrix& a, const SliceFrame& frame) {
  ComplexPairForm form;
  form.a1.resize(a.rows(), a.cols());
  form.a2.resize(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      form.a1(i, j) = frame.component_1(a(i, j));
      form.a2(i, j) = frame.component_2(a(i, j));
    }
  return form;
}

QMatrix from_pair_form(const ComplexPairForm& form, const SliceFrame& frame) {
  QMatrix a(form.a1.rows(), form.a1.cols());
  for (Eigen::Index i = 0; i < form.a1.rows(); ++i)
    for (Eigen::Index j = 0; j < form.a1.cols(); ++j)
      a(i, j) = frame.assemble(form.a1(i, j), form.a2(i, j));
  return a;
}

CMatrix complex_embed(const QMatrix& a, const SliceFrame& frame) {
  const ComplexPairForm form = pair_form(a, frame);
  const Eigen::Index n = form.a1.rows(), c = form.a1.cols();
  CMatrix chi(2 * n, 2 * c);
  chi.topLeftCorner(n, c) = form.a1;
  chi.topRightCorner(n, c) = form.a2;
  chi.bottomLeftCorner(n, c) = -form.a2.conjugate();
  chi.bottomRightCorner(n, c) = form.a1.conjugate();
  return chi;
}

double structure_defect(const CMatrix& m) {
  const Eigen::Index n = m.rows() / 2, c = m.cols() / 2;
  double acc = 0.0;
  acc += (m.topLeftCorner(n, c) - m.bottomRightCorner(n, c).conjugate())
             .squaredNorm();
  acc += (m.topRightCorner(n, c) + m.bottomLeftCorner(n, c).conjugate())
             .squaredNorm();
  return std::sqrt(acc);
}

QMatrix complex_unembed(const CMatrix& m, const SliceFrame& frame) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0)
    throw std::invalid_argument("complex_unembed: odd dimensions");
  const Eigen::Index n = m.rows() / 2, c = m.cols() / 2;
  ComplexPairForm form;
  form.a1 = 0.5 * (m.topLeftCorner(n, c) +
                   m.bottomRightCorner(n, c).conjugate());
  form.a2 = 0.5 * (m.topRightCorner(n, c) -
                   m.bottomLeftCorner(n, c).conjugate());
  return from_pair_form(form, frame);
}

CVector vector_embed(const QVector& x, const SliceFrame& frame) {
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  CVector w(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    w(j) = frame.component_1(x[j]);
    w(n + j) = -std::conj(frame.component_2(x[j]));
  }
  return w;
}

QVector vector_unembed(const CVector& w, const SliceFrame& frame) {
  if (w.size() % 2 != 0)
    throw std::invalid_argument("vector_unembed: odd dimension");
  const Eigen::Index n = w.size() / 2;
  QVector x(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j)
    x[j] = frame.assemble(w(j), -std::conj(w(n + j)));
  return x;
}

CVector symplectic_conjugate(const CVector& w) {
  const Eigen::Index n = w.size() / 2;
  CVector s(w.size());
  s.head(n) = -w.tail(n).conjugate();
  s.tail(n) = w.head(n).conjugate();
  return s;
}

double operator_norm(const SliceFrame& frame, const QMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const CMatrix chi = complex_embed(a, frame);
  return chi.jacobiSvd().singularValues()(0);
}

double operator_norm(const QMatrix& a) {
  return operator_norm(SliceFrame::standard(), a);
}

double min_singular_value(const QMatrix& a) {
  const CMatrix chi = complex_embed(a, SliceFrame::standard());
  const auto sv = chi.jacobiSvd().singularValues();
  return sv(sv.size() - 1);
}

double min_symmetric_eigenvalue(const QMatrix& a) {
  const CMatrix chi = complex_embed(a, SliceFrame::standard());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(
      0.5 * (chi + chi.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

QMatrix inverse(const QMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse: square matrix required");
  const SliceFrame frame = SliceFrame::standard();
  const CMatrix chi = complex_embed(a, frame);
  Eigen::FullPivLU<CMatrix> lu(chi);
  if (!lu.isInvertible())
    throw std::domain_error("inverse: matrix is singular");
  return complex_unembed(lu.inverse(), frame);
}

InverseSqrtResult positive_inverse_sqrt(const QMatrix& a, double tol) {
  if (!a.is_square())
    throw std::invalid_argument("positive_inverse_sqrt: square matrix required");
  const SliceFrame frame = SliceFrame::standard();
  const double scale = std::max(1.0, frobenius_norm(a));
  if (frobenius_norm(a - adjoint(a)) > tol * scale)
    throw std::domain_error(
        "positive_inverse_sqrt: input is not self adjoint (Frobenius residual "
        "exceeds tolerance)");
  const CMatrix chi = complex_embed(a, frame);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (chi + chi.adjoint()));
  Eigen::VectorXd evals = solver.eigenvalues();
  const double largest = evals(evals.size() - 1);
  if (evals(0) < -tol * scale)
    throw std::domain_error(
        "positive_inverse_sqrt: input has eigenvalue " +
        std::to_string(evals(0)) + " below tolerance (not positive)");

  InverseSqrtResult result;
  const double floor_value = std::max(largest, 1.0) * 1e-14;
  Eigen::VectorXd inv_sqrt(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    double lambda = evals(k);
    if (lambda < floor_value) {
      lambda = floor_value;
      ++result.clamped;
    }
    inv_sqrt(k) = 1.0 / std::sqrt(lambda);
  }
  const CMatrix b = solver.eigenvectors() * inv_sqrt.asDiagonal() *
                    solver.eigenvectors().adjoint();
  result.matrix = complex_unembed(b, frame);
  return result;
}

QMatrix z_transform(const QMatrix& t) {
  if (!t.is_square()) throw std::invalid_argument("z_transform: square matrix required");
  const QMatrix gram = QMatrix::identity(t.rows()) + adjoint(t) * t;
  return t * positive_inverse_sqrt(gram).matrix;
}

namespace {

// Indices [begin, end) of consecutive eigenvalues closer than tau.
std::vector<std::pair<Eigen::Index, Eigen::Index>> chain_groups(
    const Eigen::VectorXd& values, double tau) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> groups;
  Eigen::Index begin = 0;
  for (Eigen::Index k = 1; k <= values.size(); ++k) {
    if (k == values.size() || values(k) - values(k - 1) > tau) {
      groups.emplace_back(begin, k);
      begin = k;
    }
  }
  return groups;
}

}  // namespace

ComplexNormalEigen eigendecompose_normal(const CMatrix& b) {
  if (b.rows() != b.cols())
    throw std::invalid_argument("eigendecompose_normal: square matrix required");
  ComplexNormalEigen out;
  const Eigen::Index n = b.rows();
  if (n == 0) return out;

  const double scale = std::max(1.0, b.norm());
  const CMatrix herm = 0.5 * (b + b.adjoint());
  const CMatrix skew = (b - b.adjoint()) / (2.0 * kI);

  Eigen::SelfAdjointEigenSolver<CMatrix> hsolver(herm);
  CMatrix v = hsolver.eigenvectors();
  const Eigen::VectorXd hvals = hsolver.eigenvalues();

  // Rotates the columns in [lo, lo+size) to diagonalize the compression of
  // the given Hermitian operator there, and returns the compressed spectrum.
  auto rotate_block = [&v](const CMatrix& op, Eigen::Index lo,
                           Eigen::Index size) {
    const CMatrix block = v.middleCols(lo, size);
    CMatrix compressed = block.adjoint() * op * block;
    compressed = 0.5 * (compressed + compressed.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(compressed);
    v.middleCols(lo, size) = block * solver.eigenvectors();
    return Eigen::VectorXd(solver.eigenvalues());
  };

  // Within each near degenerate group of the Hermitian part, diagonalize the
  // compressed skew part; within skew-degenerate sub blocks, refine with the
  // Hermitian part once more. The first threshold is deliberately generous
  // (what it over-merges the later stages separate sharply, while gaps above
  // it keep the first stage subspaces accurate); the refinement threshold
  // matches the cluster merge radius, so pairs no stage can split are merged
  // downstream anyway.
  const double tau = 1e-5 * scale;
  const double tau_refine = 1e-8 * scale;
  for (const auto& [lo, hi] : chain_groups(hvals, tau)) {
    const Eigen::Index size = hi - lo;
    if (size < 2) continue;
    const Eigen::VectorXd kvals = rotate_block(skew, lo, size);
    for (const auto& [klo, khi] : chain_groups(kvals, tau_refine)) {
      const Eigen::Index ksize = khi - klo;
      if (ksize < 2) continue;
      rotate_block(herm, lo + klo, ksize);
    }
  }

  out.vectors = std::move(v);
  out.values.resize(n);
  const CMatrix bv = b * out.vectors;
  for (Eigen::Index k = 0; k < n; ++k)
    out.values(k) = out.vectors.col(k).dot(bv.col(k));
  out.residual =
      (bv - out.vectors * out.values.asDiagonal()).norm() / scale;
  return out;
}

}  // namespace qspectral
