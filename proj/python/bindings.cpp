#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qspectral/measure.hpp"
#include "qspectral/random.hpp"
#include "qspectral/report.hpp"
#include "qspectral/tower.hpp"
#include "qspectral/verify.hpp"

namespace py = pybind11;
using namespace qspectral;

namespace {

// Quaternion matrices travel as float64 arrays of shape (n, n, 4) holding
// the components along 1, i, j, k.
QMatrix matrix_from_array(const py::array_t<double>& array) {
  const py::buffer_info buf = array.request();
  if (buf.ndim != 3 || buf.shape[2] != 4)
    throw std::invalid_argument("expected an array of shape (rows, cols, 4)");
  const auto view = array.unchecked<3>();
  QMatrix m(static_cast<std::size_t>(buf.shape[0]),
            static_cast<std::size_t>(buf.shape[1]));
  for (py::ssize_t r = 0; r < buf.shape[0]; ++r)
    for (py::ssize_t c = 0; c < buf.shape[1]; ++c)
      m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
          Quaternion{view(r, c, 0), view(r, c, 1), view(r, c, 2),
                     view(r, c, 3)};
  return m;
}

py::array_t<double> matrix_to_array(const QMatrix& m) {
  py::array_t<double> array({m.rows(), m.cols(), std::size_t{4}});
  auto view = array.mutable_unchecked<3>();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Quaternion& q = m(r, c);
      view(r, c, 0) = q.w;
      view(r, c, 1) = q.x;
      view(r, c, 2) = q.y;
      view(r, c, 3) = q.z;
    }
  return array;
}

QVector vector_from_array(const py::array_t<double>& array) {
  const py::buffer_info buf = array.request();
  if (buf.ndim != 2 || buf.shape[1] != 4)
    throw std::invalid_argument("expected an array of shape (n, 4)");
  const auto view = array.unchecked<2>();
  QVector x(static_cast<std::size_t>(buf.shape[0]));
  for (py::ssize_t j = 0; j < buf.shape[0]; ++j)
    x[static_cast<std::size_t>(j)] =
        Quaternion{view(j, 0), view(j, 1), view(j, 2), view(j, 3)};
  return x;
}

UnitImaginary axis_from_tuple(const std::array<double, 4>& m) {
  return UnitImaginary(Quaternion{m[0], m[1], m[2], m[3]});
}

SliceFrame frame_from_tuple(const std::array<double, 4>& m) {
  return SliceFrame::around(axis_from_tuple(m));
}

py::tuple quaternion_to_tuple(const Quaternion& q) {
  return py::make_tuple(q.w, q.x, q.y, q.z);
}

constexpr std::array<double, 4> kAxisI{0.0, 1.0, 0.0, 0.0};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Spectral decomposition of normal quaternion matrices: complex "
      "structures, slice bases, spherical spectra and projection valued "
      "measures.";
  m.attr("__version__") = kLibraryVersion;

  py::class_<Quaternion>(m, "Quaternion")
      .def(py::init<double, double, double, double>(), py::arg("w") = 0.0,
           py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("z") = 0.0)
      .def_readwrite("w", &Quaternion::w)
      .def_readwrite("x", &Quaternion::x)
      .def_readwrite("y", &Quaternion::y)
      .def_readwrite("z", &Quaternion::z)
      .def("__add__", [](const Quaternion& a, const Quaternion& b) { return a + b; })
      .def("__sub__", [](const Quaternion& a, const Quaternion& b) { return a - b; })
      .def("__mul__", [](const Quaternion& a, const Quaternion& b) { return a * b; })
      .def("__neg__", [](const Quaternion& a) { return -a; })
      .def("__abs__", [](const Quaternion& a) { return abs(a); })
      .def("conjugate", [](const Quaternion& a) { return conj(a); })
      .def("__repr__", [](const Quaternion& a) {
        return "Quaternion(" + std::to_string(a.w) + ", " + std::to_string(a.x) +
               ", " + std::to_string(a.y) + ", " + std::to_string(a.z) + ")";
      });

  m.def(
      "classify",
      [](const py::array_t<double>& matrix, double tol) {
        const OperatorClass flags = classify(matrix_from_array(matrix), tol);
        py::dict out;
        py::list names;
        if (flags.normal) names.append("normal");
        if (flags.self_adjoint) names.append("self_adjoint");
        if (flags.anti_self_adjoint) names.append("anti_self_adjoint");
        if (flags.unitary) names.append("unitary");
        if (flags.positive) names.append("positive");
        out["flags"] = names;
        out["normal_residual"] = flags.normal_residual;
        out["self_adjoint_residual"] = flags.self_adjoint_residual;
        out["anti_self_adjoint_residual"] = flags.anti_self_adjoint_residual;
        out["unitary_residual"] = flags.unitary_residual;
        return out;
      },
      py::arg("matrix"), py::arg("tol") = kDefaultTol,
      "Residual based operator class flags.");

  m.def(
      "spectral_decompose",
      [](const py::array_t<double>& matrix, const std::array<double, 4>& m_axis) {
        const SliceFrame frame = frame_from_tuple(m_axis);
        const EigenSystem sys =
            spectral_decompose(matrix_from_array(matrix), frame);
        py::dict out;
        py::list values;
        for (std::size_t c = 0; c < sys.clusters.size(); ++c)
          values.append(py::make_tuple(sys.clusters[c].alpha,
                                       sys.clusters[c].beta,
                                       sys.multiplicities[c]));
        out["eigenvalues"] = values;
        out["U"] = matrix_to_array(sys.basis);
        out["eigen_residual"] = sys.eigen_residual;
        out["unitarity_residual"] = sys.unitarity_residual;
        return out;
      },
      py::arg("matrix"), py::arg("m") = kAxisI,
      "Right eigenvalue decomposition over the closed upper half slice.");

  m.def(
      "construct_j",
      [](const py::array_t<double>& matrix, const std::array<double, 4>& m_axis) {
        return matrix_to_array(
            construct_j(matrix_from_array(matrix), frame_from_tuple(m_axis)).j);
      },
      py::arg("matrix"), py::arg("m") = kAxisI,
      "Anti self adjoint unitary commuting with the given normal operator.");

  m.def(
      "spherical_spectrum",
      [](const py::array_t<double>& matrix, const std::array<double, 4>& m_axis) {
        py::list out;
        for (const SpectralClass& cls : spherical_spectrum(
                 matrix_from_array(matrix), frame_from_tuple(m_axis)))
          out.append(py::make_tuple(cls.representative.alpha,
                                    cls.representative.beta,
                                    cls.multiplicity));
        return out;
      },
      py::arg("matrix"), py::arg("m") = kAxisI,
      "Spectral spheres as (alpha, beta, multiplicity) upper half plane "
      "representatives.");

  m.def(
      "build_measure",
      [](const py::array_t<double>& matrix, const std::array<double, 4>& m_axis) {
        const QMatrix t = matrix_from_array(matrix);
        const QSpectralMeasure measure =
            build_measure(t, frame_from_tuple(m_axis));
        py::dict out;
        py::list atoms;
        for (const SpectralAtom& atom : measure.atoms) {
          py::dict entry;
          entry["lambda"] = py::make_tuple(atom.lambda.alpha, atom.lambda.beta);
          entry["rank"] = atom.rank;
          entry["projector"] = matrix_to_array(atom.projector);
          entry["projection_residual"] = atom.projector_residual;
          atoms.append(entry);
        }
        out["atoms"] = atoms;
        out["J"] = matrix_to_array(measure.structure.j);
        out["reconstruction_residual"] =
            frobenius_norm(t - reconstruct_operator(measure)) /
            std::max(1.0, frobenius_norm(t));
        return out;
      },
      py::arg("matrix"), py::arg("m") = kAxisI,
      "Projection valued spectral measure with one atom per spectral sphere.");

  m.def(
      "reconstruct",
      [](const py::array_t<double>& matrix, const std::array<double, 4>& m_axis) {
        const QMatrix t = matrix_from_array(matrix);
        return matrix_to_array(
            reconstruct_operator(build_measure(t, frame_from_tuple(m_axis))));
      },
      py::arg("matrix"), py::arg("m") = kAxisI,
      "Rebuilds the operator from its spectral measure.");

  m.def(
      "integrate_representation",
      [](const py::array_t<double>& matrix, const py::array_t<double>& x,
         const py::array_t<double>& y, const std::array<double, 4>& m_axis) {
        const QMatrix t = matrix_from_array(matrix);
        const QSpectralMeasure measure =
            build_measure(t, frame_from_tuple(m_axis));
        return quaternion_to_tuple(integrate_representation(
            measure, vector_from_array(x), vector_from_array(y)));
      },
      py::arg("matrix"), py::arg("x"), py::arg("y"), py::arg("m") = kAxisI,
      "The spectral integral <x|Ty> evaluated through the measure.");

  m.def(
      "inner",
      [](const py::array_t<double>& x, const py::array_t<double>& y) {
        return quaternion_to_tuple(
            inner(vector_from_array(x), vector_from_array(y)));
      },
      py::arg("x"), py::arg("y"),
      "Quaternion valued inner product, right linear in the second slot.");

  m.def(
      "z_transform",
      [](const py::array_t<double>& matrix) {
        return matrix_to_array(z_transform(matrix_from_array(matrix)));
      },
      py::arg("matrix"), "The norm contracting image T (I + T*T)^{-1/2}.");

  m.def(
      "operator_norm",
      [](const py::array_t<double>& matrix) {
        return operator_norm(matrix_from_array(matrix));
      },
      py::arg("matrix"), "Largest singular value.");

  m.def(
      "evolve",
      [](const py::array_t<double>& matrix, const std::vector<double>& times,
         const std::array<double, 4>& m_axis) {
        const QMatrix t = matrix_from_array(matrix);
        const QSpectralMeasure measure =
            build_measure(t, frame_from_tuple(m_axis));
        py::list out;
        for (double tau : times) {
          const QMatrix e = functional_calculus(
              measure,
              [tau](std::complex<double> z) { return std::exp(tau * z); });
          py::dict entry;
          entry["t"] = tau;
          entry["matrix"] = matrix_to_array(e);
          entry["unitarity_residual"] = frobenius_norm(
              e * adjoint(e) - QMatrix::identity(t.rows()));
          out.append(entry);
        }
        return out;
      },
      py::arg("matrix"), py::arg("times"), py::arg("m") = kAxisI,
      "exp(t T) over a time grid through the functional calculus.");

  m.def(
      "tower_signature",
      [](const std::string& family, const std::vector<std::size_t>& sizes,
         const std::array<double, 4>& m_axis) {
        const SliceFrame frame = frame_from_tuple(m_axis);
        const DiagonalSymbol symbol =
            DiagonalSymbol::parse_family(family, frame.m);
        const UnboundednessSignature sig =
            unboundedness_signature(build_tower(symbol, sizes), frame);
        py::list out;
        for (const UnboundednessLevel& level : sig.levels) {
          py::dict entry;
          entry["size"] = level.size;
          entry["operator_norm"] = level.operator_norm;
          entry["z_norm"] = level.z_norm;
          entry["j_commutation"] = level.j_commutation;
          out.append(entry);
        }
        return out;
      },
      py::arg("family"), py::arg("sizes"), py::arg("m") = kAxisI,
      "Norm growth along diagonal truncations of an unbounded symbol.");

  m.def(
      "verify",
      [](const py::array_t<double>& matrix, const std::array<double, 4>& m_axis,
         std::uint64_t seed) {
        const SliceFrame frame = frame_from_tuple(m_axis);
        const VerificationReport report =
            run_verification(matrix_from_array(matrix), frame, 1.0, seed);
        py::dict out;
        py::list properties;
        for (const PropertyResult& p : report.properties) {
          py::dict entry;
          entry["name"] = p.name;
          entry["residual"] = p.residual;
          entry["tolerance"] = p.tolerance;
          entry["pass"] = p.pass;
          properties.append(entry);
        }
        out["properties"] = properties;
        out["pass"] = report.pass;
        return out;
      },
      py::arg("matrix"), py::arg("m") = kAxisI, py::arg("seed") = 42,
      "Runs the named invariant suite against a normal operator.");

  m.def(
      "random_normal",
      [](std::size_t n, std::uint64_t seed, const std::array<double, 4>& m_axis) {
        const SliceFrame frame = frame_from_tuple(m_axis);
        Rng rng(seed);
        return matrix_to_array(random_normal_operator(n, frame, rng));
      },
      py::arg("n"), py::arg("seed") = 0, py::arg("m") = kAxisI,
      "A normal operator with a planted upper half plane spectrum.");
}
