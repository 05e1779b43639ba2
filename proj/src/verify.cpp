#include "qspectral/verify.hpp"

#include <cmath>
#include <complex>
#include <functional>

#include "qspectral/random.hpp"

namespace qspectral {

namespace {

class Suite {
 public:
  Suite(double tol_base, std::uint64_t seed) : base_(tol_base), rng_(seed) {}

  void check(const std::string& name, double residual, double tolerance) {
    PropertyResult r{name, residual, tolerance * base_,
                     residual <= tolerance * base_};
    if (!r.pass && report_.pass) {
      report_.pass = false;
      report_.first_failure = name;
    }
    report_.properties.push_back(std::move(r));
  }

  Rng& rng() { return rng_; }
  VerificationReport take() { return std::move(report_); }

 private:
  double base_;
  Rng rng_;
  VerificationReport report_;
};

// --- quaternion_core -------------------------------------------------------

void verify_quaternions(Suite& s, const SliceFrame& frame) {
  Rng& rng = s.rng();
  double modulus = 0.0, conj_laws = 0.0, classes = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    modulus = std::max(modulus,
                       std::fabs(abs(p * q) - abs(p) * abs(q)) /
                           std::max(1.0, abs(p) * abs(q)));
    conj_laws = std::max(conj_laws, abs(conj(conj(q)) - q));
    conj_laws = std::max(
        conj_laws, abs(q + conj(q) - Quaternion{2.0 * real_part(q)}));
    conj_laws = std::max(
        conj_laws,
        std::fabs(std::fabs((q * conj(q)).w) - norm_sq(q)) /
            std::max(1.0, norm_sq(q)));
    conj_laws = std::max(conj_laws, std::fabs(abs(conj(q)) - abs(q)));
    Quaternion t = random_quaternion(rng);
    if (abs(t) < 1e-3) t = Quaternion::one();
    const Quaternion conjugated = inverse(t) * q * t;
    classes = std::max(classes, class_distance(conjugated, q));
  }
  s.check("quaternion.modulus_multiplicative", modulus, 1e-12);
  s.check("quaternion.conjugation_laws", conj_laws, 1e-12);
  s.check("quaternion.similarity_class_invariance", classes, 1e-10);

  // C_m and C_n meet only in the reals for independent axes.
  double intersection = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion q = random_quaternion(rng);
    if (slice_defect(q, frame.m) <= 1e-12 &&
        slice_defect(q, frame.n) <= 1e-12)
      intersection = std::max(intersection, imag_norm(q));
  }
  {  // and exactly real quaternions do live in both
    const Quaternion r{1.25};
    if (slice_defect(r, frame.m) > 1e-14 || slice_defect(r, frame.n) > 1e-14)
      intersection = std::max(intersection, 1.0);
  }
  s.check("quaternion.slice_planes_meet_in_reals", intersection, 1e-10);

  double idem = 0.0, member = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion q = random_quaternion(rng);
    const SliceComplex rep = class_representative(q, frame.m);
    const SliceComplex again = class_representative(rep.embed(), frame.m);
    idem = std::max(idem, distance(rep, again));
    member = std::max(member, slice_defect(rep.embed(), frame.m));
  }
  s.check("quaternion.class_representative_idempotent", idem, 1e-12);
  s.check("quaternion.class_representative_in_slice", member, 1e-12);
}

// --- qspace ----------------------------------------------------------------

void verify_space(Suite& s, const SliceFrame& frame) {
  Rng& rng = s.rng();
  double right_linear = 0.0, conj_sym = 0.0, polarization = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + (rng() % 32);
    const QVector u = random_qvector(n, rng);
    const QVector v = random_qvector(n, rng);
    const Quaternion q = random_quaternion(rng);
    const double scale = std::max(1.0, norm(u) * norm(v));
    right_linear = std::max(
        right_linear, abs(inner(u, v * q) - inner(u, v) * q) /
                          std::max(1.0, scale * abs(q)));
    conj_sym = std::max(conj_sym,
                        abs(inner(u, v) - conj(inner(v, u))) / scale);
    polarization =
        std::max(polarization, abs(inner_via_polarization(u, v) - inner(u, v)) /
                                   (norm(u) * norm(v) + 1.0));
  }
  s.check("space.inner_right_linear", right_linear, 1e-12);
  s.check("space.inner_conjugate_symmetric", conj_sym, 1e-12);
  s.check("space.polarization_identity", polarization, 1e-11);

  // Hilbert basis equivalences on an orthonormalized random family.
  const std::size_t n = 8;
  std::vector<QVector> family;
  for (std::size_t c = 0; c < n; ++c) family.push_back(random_qvector(n, rng));
  const HilbertBasis basis = gram_schmidt(family);
  double gram = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Quaternion g = inner(basis[a], basis[b]);
      gram = std::max(gram, abs(g - Quaternion{a == b ? 1.0 : 0.0}));
    }
  s.check("space.gram_schmidt_orthonormal", gram, 1e-10);

  double parseval = 0.0, expansion = 0.0, series = 0.0, complement = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const QVector x = random_qvector(n, rng);
    const QVector y = random_qvector(n, rng);
    const std::vector<Quaternion> cx = fourier_expand(x, basis);
    QVector rebuilt(n);
    double sum_sq = 0.0;
    Quaternion series_inner;
    for (std::size_t a = 0; a < n; ++a) {
      rebuilt = rebuilt + basis[a] * cx[a];
      sum_sq += norm_sq(cx[a]);
      series_inner += inner(x, basis[a]) * inner(basis[a], y);
    }
    const double nx = norm(x);
    parseval = std::max(parseval,
                        std::fabs(nx * nx - sum_sq) / std::max(1.0, nx * nx));
    expansion = std::max(expansion, norm(x - rebuilt) / std::max(1.0, nx));
    series = std::max(series, abs(inner(x, y) - series_inner) /
                                  std::max(1.0, nx * norm(y)));
    QVector residual = x;
    for (std::size_t a = 0; a < n; ++a)
      residual = residual - basis[a] * inner(basis[a], x);
    complement = std::max(complement, norm(residual) / std::max(1.0, nx));
  }
  s.check("space.parseval", parseval, 1e-11);
  s.check("space.fourier_expansion_reconstructs", expansion, 1e-11);
  s.check("space.inner_product_series", series, 1e-11);
  s.check("space.trivial_orthogonal_complement", complement, 1e-10);

  double multiplicative = 0.0, unital = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    const QVector x = random_qvector(n, rng);
    const QVector lhs = left_multiply(p, left_multiply(q, x, basis), basis);
    const QVector rhs = left_multiply(p * q, x, basis);
    const double scale = std::max(1.0, abs(p) * abs(q) * norm(x));
    multiplicative = std::max(multiplicative, norm(lhs - rhs) / scale);
    unital = std::max(unital, norm(left_multiply(Quaternion::one(), x, basis) -
                                   x) /
                                  std::max(1.0, norm(x)));
  }
  s.check("space.left_multiplication_multiplicative", multiplicative, 1e-12);
  s.check("space.left_multiplication_unital", unital, 1e-12);
  (void)frame;
}

// --- qoperator -------------------------------------------------------------

void verify_operator(Suite& s, const SliceFrame& frame) {
  Rng& rng = s.rng();
  const std::size_t n = 6;

  double adjoint_pairing = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const QMatrix a = random_qmatrix(n, rng);
    const QVector x = random_qvector(n, rng);
    const QVector y = random_qvector(n, rng);
    adjoint_pairing = std::max(
        adjoint_pairing,
        abs(inner(x, a * y) - inner(adjoint(a) * x, y)) /
            std::max(1.0, frobenius_norm(a) * norm(x) * norm(y)));
  }
  s.check("operator.adjoint_moves_across_inner", adjoint_pairing, 1e-12);

  double hom = 0.0, star = 0.0, norm_match = 0.0, inv = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const QMatrix a = random_qmatrix(n, rng);
    const QMatrix b = random_qmatrix(n, rng);
    const double scale = std::max(1.0, frobenius_norm(a) * frobenius_norm(b));
    hom = std::max(hom, (complex_embed(a * b, frame) -
                         complex_embed(a, frame) * complex_embed(b, frame))
                            .norm() /
                            scale);
    star = std::max(star, (complex_embed(adjoint(a), frame) -
                           complex_embed(a, frame).adjoint())
                              .norm() /
                              std::max(1.0, frobenius_norm(a)));
    double direct_sup = 0.0;
    for (int probe = 0; probe < 20; ++probe) {
      const QVector x = random_qvector(n, rng);
      direct_sup = std::max(direct_sup, norm(a * x) / norm(x));
    }
    const double op = operator_norm(frame, a);
    norm_match = std::max(norm_match,
                          std::max(0.0, direct_sup - op) / std::max(1.0, op));
    const QMatrix ainv = inverse(a);
    inv = std::max(inv, frobenius_norm(a * ainv - QMatrix::identity(n)) /
                            std::max(1.0, frobenius_norm(a) *
                                              frobenius_norm(ainv)));
  }
  s.check("operator.embedding_multiplicative", hom, 1e-11);
  s.check("operator.embedding_respects_adjoint", star, 1e-12);
  s.check("operator.norm_dominates_samples", norm_match, 1e-10);
  s.check("operator.inverse_through_embedding", inv, 1e-11);
  s.check("operator.embedding_of_identity",
          (complex_embed(QMatrix::identity(n), frame) -
           CMatrix::Identity(2 * n, 2 * n))
              .norm(),
          1e-14);

  const QMatrix t = random_normal_operator(n, frame, rng);
  double delta_invariance = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Quaternion q = random_quaternion(rng);
    Quaternion sconj = random_quaternion(rng);
    if (abs(sconj) < 1e-3) sconj = Quaternion::one();
    const Quaternion q2 = inverse(sconj) * q * sconj;
    delta_invariance = std::max(
        delta_invariance,
        frobenius_norm(delta(t, q) - delta(t, q2)) /
            std::max(1.0, frobenius_norm(t) * frobenius_norm(t) +
                              norm_sq(q)));
  }
  s.check("operator.delta_constant_on_spheres", delta_invariance, 1e-11);

  // Classification flags survive unitary conjugation.
  const QMatrix u = random_unitary(n, rng);
  const QMatrix conjugated = adjoint(u) * t * u;
  const OperatorClass before = classify(t);
  const OperatorClass after = classify(conjugated);
  const bool same_flags = before.normal == after.normal &&
                          before.self_adjoint == after.self_adjoint &&
                          before.anti_self_adjoint == after.anti_self_adjoint &&
                          before.unitary == after.unitary &&
                          before.positive == after.positive;
  s.check("operator.classification_conjugation_stable", same_flags ? 0.0 : 1.0,
          0.5);

  const QMatrix z = z_transform(t);
  s.check("operator.z_transform_contracts",
          std::max(0.0, operator_norm(frame, z) - (1.0 - 1e-15)), 0.0);
  s.check("operator.z_transform_commutes",
          std::max(commutator_norm(z, t), commutator_norm(z, adjoint(t))) /
              std::max(1.0, frobenius_norm(t)),
          1e-9);
  const QMatrix back =
      z * positive_inverse_sqrt(QMatrix::identity(n) - adjoint(z) * z)
              .matrix;
  s.check("operator.z_transform_roundtrip",
          frobenius_norm(t - back) / std::max(1.0, frobenius_norm(t)), 1e-8);
}

// --- slice_spectral --------------------------------------------------------

void verify_slice(Suite& s, const QMatrix& t, const SliceFrame& frame) {
  Rng& rng = s.rng();
  const std::size_t n = t.rows();

  const EigenSystem system = spectral_decompose(t, frame);
  s.check("slice.eigensystem_residual", system.eigen_residual, 1e-9);
  s.check("slice.eigenvectors_orthonormal", system.unitarity_residual, 1e-10);

  const ComplexStructure structure = construct_j(t, frame);
  s.check("slice.j_anti_self_adjoint", structure.anti_self_adjoint_residual,
          1e-10);
  s.check("slice.j_unitary", structure.unitarity_residual, 1e-10);
  s.check("slice.j_commutes_with_t", structure.commutation_residual, 1e-9);

  double reassembly = 0.0, membership = 0.0, cm_orthogonal = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const QVector x = random_qvector(n, rng);
    const SliceSplit parts = split(x, structure, frame.m);
    const double nx = std::max(1.0, norm(x));
    reassembly =
        std::max(reassembly, norm(x - (parts.plus + parts.minus)) / nx);
    membership = std::max(
        membership,
        norm(structure.j * parts.plus - parts.plus * frame.m.value()) / nx);
    membership = std::max(
        membership,
        norm(structure.j * parts.minus + parts.minus * frame.m.value()) / nx);
    // Orthogonality in the C_m sense: the direct sum is of C_m Hilbert
    // spaces, the n and mn components of the pairing are not constrained.
    cm_orthogonal =
        std::max(cm_orthogonal,
                 std::abs(frame.component_1(inner(parts.plus, parts.minus))) /
                     nx / nx);
  }
  s.check("slice.split_reassembles", reassembly, 1e-12);
  s.check("slice.split_lands_in_eigenspaces", membership, 1e-10);
  s.check("slice.split_parts_cm_orthogonal", cm_orthogonal, 1e-11);

  const SliceBasis basis = slice_basis(structure, frame);
  double basis_membership = 0.0, cm_valued = 0.0;
  for (std::size_t a = 0; a < basis.plus_basis.size(); ++a) {
    const QVector& z = basis.plus_basis[a];
    basis_membership = std::max(
        basis_membership, norm(structure.j * z - z * frame.m.value()));
    for (std::size_t b = 0; b < basis.plus_basis.size(); ++b)
      cm_valued = std::max(cm_valued,
                           std::abs(frame.component_2(
                               inner(basis.plus_basis[a], basis.plus_basis[b]))));
  }
  s.check("slice.basis_in_plus_eigenspace", basis_membership, 1e-10);
  s.check("slice.basis_inner_products_cm_valued", cm_valued, 1e-11);

  double lm_equals_j = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const QVector x = random_qvector(n, rng);
    lm_equals_j = std::max(
        lm_equals_j,
        norm(left_multiply(frame.m.value(), x, basis.plus_basis) -
             structure.j * x) /
            std::max(1.0, norm(x)));
  }
  s.check("slice.left_multiplication_by_m_is_j", lm_equals_j, 1e-10);

  double phi_involution = 0.0, phi_flips = 0.0;
  for (std::size_t a = 0; a < basis.plus_basis.size(); ++a) {
    const QVector& z = basis.plus_basis[a];
    const QVector phi = z * frame.n.value();
    phi_involution = std::max(
        phi_involution, norm(phi * frame.n.value() + z));
    phi_flips = std::max(phi_flips,
                         norm(split(phi, structure, frame.m).plus));
  }
  s.check("slice.phi_squares_to_minus_one", phi_involution, 1e-12);
  s.check("slice.phi_maps_plus_to_minus", phi_flips, 1e-10);

  const CMatrix induced = induce_complex(t, basis);
  const QMatrix extended = extend_operator(induced, basis);
  s.check("slice.extend_after_induce_is_identity",
          frobenius_norm(extended - t) / std::max(1.0, frobenius_norm(t)),
          1e-10);

  double ext_product = 0.0, ext_adjoint = 0.0, ext_norm = 0.0, ext_j = 0.0,
         ext_inverse = 0.0, induce_roundtrip = 0.0;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix a(n, n), b(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) = std::complex<double>(gauss(rng), gauss(rng));
        b(r, c) = std::complex<double>(gauss(rng), gauss(rng));
      }
    const QMatrix ea = extend_operator(a, basis);
    const QMatrix eb = extend_operator(b, basis);
    const double scale = std::max(1.0, a.norm() * b.norm());
    ext_product = std::max(
        ext_product,
        frobenius_norm(extend_operator(a * b, basis) - ea * eb) / scale);
    ext_adjoint = std::max(
        ext_adjoint,
        frobenius_norm(extend_operator(a.adjoint(), basis) - adjoint(ea)) /
            std::max(1.0, a.norm()));
    ext_norm = std::max(ext_norm,
                        std::fabs(operator_norm(frame, ea) -
                                  a.jacobiSvd().singularValues()(0)) /
                            std::max(1.0, a.norm()));
    ext_j = std::max(ext_j, commutator_norm(structure.j, ea) /
                                std::max(1.0, a.norm()));
    const CMatrix a_reg = a + 3.0 * CMatrix::Identity(n, n);
    ext_inverse = std::max(
        ext_inverse,
        frobenius_norm(extend_operator(a_reg.inverse(), basis) -
                       inverse(extend_operator(a_reg, basis))) /
            std::max(1.0, a_reg.inverse().norm()));
    induce_roundtrip = std::max(
        induce_roundtrip,
        (induce_complex(ea, basis) - a).norm() / std::max(1.0, a.norm()));
  }
  s.check("slice.extension_multiplicative", ext_product, 1e-11);
  s.check("slice.extension_respects_adjoint", ext_adjoint, 1e-11);
  s.check("slice.extension_preserves_norm", ext_norm, 1e-11);
  s.check("slice.extension_commutes_with_j", ext_j, 1e-11);
  s.check("slice.extension_respects_inverse", ext_inverse, 1e-9);
  s.check("slice.induce_after_extend_is_identity", induce_roundtrip, 1e-11);

  double poly_commutes = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const QMatrix p = random_polynomial_in(t, structure.j, 3, rng);
    poly_commutes = std::max(poly_commutes,
                             commutator_norm(structure.j, p) /
                                 std::max(1.0, frobenius_norm(p)));
  }
  s.check("slice.j_commutes_with_polynomials", poly_commutes, 1e-9);

  // Spectrum certificates: Delta is singular on every reported sphere and
  // boundedly invertible away from all of them.
  const std::vector<SpectralClass> spectrum = spherical_spectrum(t, frame);
  const double t_scale = std::max(1.0, operator_norm(frame, t));
  double on_sphere = 0.0;
  for (const SpectralClass& cls : spectrum)
    on_sphere = std::max(on_sphere, cls.delta_min_singular_value /
                                        (t_scale * t_scale));
  s.check("slice.delta_singular_on_spectrum", on_sphere, 1e-8);

  double off_sphere = 0.0;
  std::uniform_real_distribution<double> alpha_dist(-t_scale - 1.0,
                                                    t_scale + 1.0);
  std::uniform_real_distribution<double> beta_dist(0.0, t_scale + 1.0);
  int probes = 0;
  while (probes < 20) {
    const SliceComplex probe{alpha_dist(rng), beta_dist(rng), frame.m};
    double dist_to_spectrum = 1e300;
    for (const SpectralClass& cls : spectrum)
      dist_to_spectrum =
          std::min(dist_to_spectrum, distance(probe, cls.representative));
    if (dist_to_spectrum < 0.1) continue;
    ++probes;
    const double smin = min_singular_value(delta(t, probe.embed()));
    const double bound = 0.5 * dist_to_spectrum * dist_to_spectrum;
    off_sphere = std::max(off_sphere, std::max(0.0, bound - smin) / bound);
  }
  s.check("slice.delta_invertible_off_spectrum", off_sphere, 0.5);
}

// --- spectral_measure ------------------------------------------------------

void verify_measure(Suite& s, const QMatrix& t, const SliceFrame& frame) {
  Rng& rng = s.rng();
  const std::size_t n = t.rows();
  const QSpectralMeasure measure = build_measure(t, frame);
  const QMatrix id = QMatrix::identity(n);

  double projection = 0.0, orthogonality = 0.0, j_commute = 0.0;
  QMatrix total = QMatrix::zero(n, n);
  for (std::size_t i = 0; i < measure.atoms.size(); ++i) {
    projection = std::max(projection, measure.atoms[i].projector_residual);
    j_commute = std::max(j_commute, commutator_norm(measure.structure.j,
                                                    measure.atoms[i].projector));
    total = total + measure.atoms[i].projector;
    for (std::size_t k = i + 1; k < measure.atoms.size(); ++k)
      orthogonality = std::max(
          orthogonality, frobenius_norm(measure.atoms[i].projector *
                                        measure.atoms[k].projector));
  }
  s.check("measure.atoms_are_projections", projection, 1e-10);
  s.check("measure.atoms_mutually_orthogonal", orthogonality, 1e-10);
  s.check("measure.resolution_of_identity", frobenius_norm(total - id), 1e-10);
  s.check("measure.atoms_commute_with_j", j_commute, 1e-10);
  s.check("measure.empty_and_full",
          frobenius_norm(evaluate(measure, Region::empty())) +
              frobenius_norm(evaluate(measure, Region::full()) - id),
          1e-10);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double span = 1.0;
  for (const SpectralAtom& atom : measure.atoms)
    span = std::max({span, std::fabs(atom.lambda.alpha) + 1.0,
                     atom.lambda.beta + 1.0});
  auto random_rect = [&]() {
    const double a0 = -span + 2.0 * span * unit(rng);
    const double a1 = -span + 2.0 * span * unit(rng);
    const double b0 = span * unit(rng);
    const double b1 = span * unit(rng);
    return Region::rectangle(std::min(a0, a1), std::max(a0, a1),
                             std::min(b0, b1), std::max(b0, b1));
  };

  double multiplicative = 0.0, additive = 0.0, positivity = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Region r1 = random_rect();
    const Region r2 = random_rect();
    multiplicative = std::max(
        multiplicative,
        frobenius_norm(evaluate(measure, r1.intersect(r2)) -
                       evaluate(measure, r1) * evaluate(measure, r2)));
    const QVector x = random_qvector(n, rng);
    const QVector y = random_qvector(n, rng);
    const double vs = std::max(1.0, norm(x) * norm(y));
    // Disjoint pieces: r1 minus r2, and the intersection.
    const Region piece1 = r1.intersect(r2.complement());
    const Region piece2 = r1.intersect(r2);
    additive = std::max(
        additive, abs(scalar_measure(measure, x, y, r1) -
                      scalar_measure(measure, x, y, piece1) -
                      scalar_measure(measure, x, y, piece2)) /
                      vs);
    const Quaternion self = scalar_measure(measure, x, x, r1);
    positivity = std::max(positivity,
                          (imag_norm(self) + std::max(0.0, -self.w)) /
                              std::max(1.0, norm(x) * norm(x)));
  }
  s.check("measure.multiplicative_on_intersections", multiplicative, 1e-11);
  s.check("measure.scalar_measures_additive", additive, 1e-11);
  s.check("measure.diagonal_scalar_measures_positive", positivity, 1e-11);

  double two_routes = 0.0, integral = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const QVector x = random_qvector(n, rng);
    const QVector y = random_qvector(n, rng);
    const double vs = norm(x) * norm(y);
    const Region region = random_rect();
    two_routes = std::max(
        two_routes, abs(scalar_measure(measure, x, y, region) -
                        scalar_measure_via_slices(measure, x, y, region)) /
                        std::max(1.0, vs));
    integral = std::max(
        integral,
        abs(inner(x, t * y) - integrate_representation(measure, x, y)) /
            std::max(1.0, frobenius_norm(t) * vs));
  }
  s.check("measure.two_route_agreement", two_routes, 1e-11);
  s.check("measure.integral_matches_matrix_elements", integral, 1e-10);

  s.check("measure.reconstruction",
          frobenius_norm(t - reconstruct_operator(measure)) /
              std::max(1.0, frobenius_norm(t)),
          1e-9);

  // The side of the eigenvalue action matters: multiplying the scalar
  // measure on the right fails against a witness with non central values.
  {
    const SliceFrame sf = SliceFrame::standard();
    QMatrix w(1, 1);
    w(0, 0) = sf.m.value();
    const QSpectralMeasure wm = build_measure(w, sf);
    QVector x(1), y(1);
    x[0] = Quaternion::one();
    y[0] = sf.n.value();
    const Quaternion truth = inner(x, w * y);
    Quaternion right_sided;
    for (const SpectralAtom& atom : wm.atoms)
      right_sided += scalar_measure(wm, x, y, Region::point(atom.lambda)) *
                     atom.lambda.embed();
    const double left_ok =
        abs(integrate_representation(wm, x, y) - truth);
    const double right_differs = abs(right_sided - truth);
    s.check("measure.left_action_matches_witness", left_ok, 1e-12);
    s.check("measure.right_action_disagrees_on_witness",
            right_differs > 0.5 ? 0.0 : 1.0, 0.5);
  }

  double calc_identity =
      frobenius_norm(functional_calculus(
                         measure, [](std::complex<double>) {
                           return std::complex<double>(1.0, 0.0);
                         }) -
                     id);
  s.check("measure.calculus_of_one_is_identity", calc_identity, 1e-10);
  const QMatrix squared = functional_calculus(
      measure, [](std::complex<double> z) { return z * z; });
  s.check("measure.calculus_square_matches_product",
          frobenius_norm(squared - t * t) /
              std::max(1.0, frobenius_norm(t) * frobenius_norm(t)),
          1e-9);

  // exp through the calculus of the complex structure's own measure stays
  // unitary; J is anti self adjoint so its spectrum is purely imaginary.
  {
    const QSpectralMeasure jm = build_measure(measure.structure.j, frame);
    double unitary = 0.0;
    for (double tau : {0.1, 1.0, 10.0}) {
      const QMatrix e = functional_calculus(jm, [tau](std::complex<double> z) {
        return std::exp(tau * z);
      });
      unitary = std::max(unitary,
                         frobenius_norm(e * adjoint(e) - id));
    }
    s.check("measure.exponential_of_anti_self_adjoint_unitary", unitary,
            1e-10);
  }

  const QSpectralMeasure regauged = build_measure(t, frame, kDefaultTol, 99);
  double gauge = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Region region = random_rect();
    gauge = std::max(gauge, frobenius_norm(evaluate(measure, region) -
                                           evaluate(regauged, region)));
  }
  s.check("measure.unique_across_gauges", gauge, 1e-9);

  const QMatrix p = random_polynomial_in(t, measure.structure.j, 3, rng);
  const CommutantReport commutant = commutant_check(measure, p, t);
  s.check("measure.commutant_for_polynomials", commutant.max_commutator, 1e-9);
  bool rejected = false;
  try {
    commutant_check(measure, random_qmatrix(n, rng), t);
  } catch (const commutant_hypothesis_error&) {
    rejected = true;
  }
  s.check("measure.commutant_rejects_noncommuting", rejected ? 0.0 : 1.0, 0.5);
  s.check("measure.commutant_identity_passes",
          commutant_check(measure, id, t).max_commutator, 1e-11);
}

// --- unbounded_harness -----------------------------------------------------

void verify_tower(Suite& s, const SliceFrame& frame) {
  const TruncationTower tower = build_tower(
      DiagonalSymbol{DiagonalSymbol::Family::kTimesM, {}, frame.m}, {4, 8, 16});
  const UnboundednessSignature sig = unboundedness_signature(tower, frame);

  double z_formula = 0.0;
  for (const UnboundednessLevel& level : sig.levels) {
    const double k = static_cast<double>(level.size);
    z_formula = std::max(
        z_formula, std::fabs(level.z_norm - k / std::sqrt(1.0 + k * k)));
    z_formula = std::max(z_formula, std::fabs(level.operator_norm - k));
  }
  s.check("tower.z_norm_formula", z_formula, 1e-10);
  s.check("tower.norms_grow", sig.norm_growth_unbounded ? 0.0 : 1.0, 0.5);
  s.check("tower.z_norms_below_one", sig.z_norms_below_one ? 0.0 : 1.0, 0.5);
  s.check("tower.z_norms_monotone", sig.z_norms_monotone ? 0.0 : 1.0, 0.5);
  double j_levels = 0.0;
  for (const UnboundednessLevel& level : sig.levels)
    j_levels = std::max(j_levels, level.j_commutation);
  s.check("tower.j_commutes_at_every_level", j_levels, 1e-9);

  const TruncationTower bounded = build_tower(
      DiagonalSymbol{DiagonalSymbol::Family::Custom,
                     std::vector<Quaternion>(16, Quaternion::one()), frame.m},
      {4, 8});
  const UnboundednessSignature bounded_sig =
      unboundedness_signature(bounded, frame);
  double stabilized =
      std::fabs(bounded_sig.levels.back().z_norm - 1.0 / std::sqrt(2.0));
  s.check("tower.bounded_symbol_z_norm_stabilizes", stabilized, 1e-10);
  s.check("tower.bounded_symbol_flagged",
          bounded_sig.norm_growth_unbounded ? 1.0 : 0.0, 0.5);

  const ConsistencyReport consistency =
      measure_consistency(tower, frame, 4, s.rng()());
  s.check("tower.measures_consistent_across_sizes", consistency.max_residual,
          1e-10);

  double level_integral = 0.0;
  for (const QMatrix& level : tower.levels) {
    const QSpectralMeasure level_measure = build_measure(level, frame);
    for (int trial = 0; trial < 10; ++trial) {
      const QVector x = random_qvector(level.rows(), s.rng());
      const QVector y = random_qvector(level.rows(), s.rng());
      level_integral = std::max(
          level_integral,
          abs(inner(x, level * y) -
              integrate_representation(level_measure, x, y)) /
              std::max(1.0, frobenius_norm(level) * norm(x) * norm(y)));
    }
  }
  s.check("tower.integral_representation_each_level", level_integral, 1e-10);

  // Projection nesting: the top corner of a large level projector is the
  // small level projector for every shared spectral class.
  const QSpectralMeasure small = build_measure(tower.levels[0], frame);
  const QSpectralMeasure large = build_measure(tower.levels[1], frame);
  double nesting = 0.0;
  for (const SpectralAtom& atom : small.atoms) {
    const QMatrix big = evaluate(large, Region::point(atom.lambda));
    QMatrix corner(tower.sizes[0], tower.sizes[0]);
    for (std::size_t r = 0; r < tower.sizes[0]; ++r)
      for (std::size_t c = 0; c < tower.sizes[0]; ++c)
        corner(r, c) = big(r, c);
    nesting = std::max(nesting, frobenius_norm(corner - atom.projector));
  }
  s.check("tower.projections_nest", nesting, 1e-10);
}

}  // namespace

VerificationReport run_verification(const QMatrix& t, const SliceFrame& frame,
                                    double tol_base, std::uint64_t seed) {
  const OperatorClass flags = classify(t);
  if (!flags.normal)
    throw normality_error(
        "run_verification: operator is not normal (Frobenius residual " +
            std::to_string(flags.normal_residual) + ")",
        flags.normal_residual);
  Suite suite(tol_base, seed);
  verify_quaternions(suite, frame);
  verify_space(suite, frame);
  verify_operator(suite, frame);
  verify_slice(suite, t, frame);
  verify_measure(suite, t, frame);
  verify_tower(suite, frame);
  return suite.take();
}

}  // namespace qspectral
