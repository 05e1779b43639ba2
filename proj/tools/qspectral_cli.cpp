// Command line front end: loads a quaternion matrix (or a diagonal symbol
// specification), runs the requested pipeline and writes one JSON report.
//
// Exit codes: 0 all executed checks pass, 1 a tolerance check failed,
// 2 input could not be parsed, 3 the input is not normal where normality is
// required.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qspectral/measure.hpp"
#include "qspectral/random.hpp"
#include "qspectral/report.hpp"
#include "qspectral/tower.hpp"
#include "qspectral/verify.hpp"

namespace {

using namespace qspectral;

constexpr int kExitPass = 0;
constexpr int kExitToleranceFailure = 1;
constexpr int kExitParseFailure = 2;
constexpr int kExitNotNormal = 3;

class parse_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JobSpec {
  std::string command;
  std::string input_path;
  std::string output_path;
  std::string m_axis = "0,1,0,0";
  std::string n_axis;
  double tol = kDefaultTol;
  std::uint64_t seed = 42;
  std::string sizes;
  std::size_t dim = 8;  // used when verify generates its own operator
};

Quaternion parse_axis(const std::string& text) {
  double parts[4];
  std::size_t pos = 0;
  int count = 0;
  while (count < 4) {
    std::size_t used = 0;
    try {
      parts[count] = std::stod(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw parse_failure("axis '" + text + "': expected four comma separated reals");
    }
    ++count;
    pos += used;
    if (count < 4) {
      if (pos >= text.size() || text[pos] != ',')
        throw parse_failure("axis '" + text + "': expected four comma separated reals");
      ++pos;
    }
  }
  if (pos != text.size())
    throw parse_failure("axis '" + text + "': trailing characters");
  return {parts[0], parts[1], parts[2], parts[3]};
}

UnitImaginary parse_unit_imaginary(const std::string& text, const char* what) {
  const Quaternion q = parse_axis(text);
  if (std::fabs(q.w) > 1e-9)
    throw parse_failure(std::string(what) + " must be purely imaginary");
  try {
    return UnitImaginary(q);
  } catch (const std::invalid_argument& e) {
    throw parse_failure(std::string(what) + ": " + e.what());
  }
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw parse_failure("sizes '" + text + "': expected comma separated integers");
    }
    if (value <= 0) throw parse_failure("sizes must be positive");
    sizes.push_back(static_cast<std::size_t>(value));
    pos += used;
    if (pos < text.size()) {
      if (text[pos] != ',') throw parse_failure("sizes '" + text + "': bad separator");
      ++pos;
    }
  }
  if (sizes.empty()) throw parse_failure("sizes: empty list");
  return sizes;
}

void reject_unknown_fields(const Json& object,
                           const std::vector<std::string>& allowed) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool ok = false;
    for (const std::string& key : allowed) ok = ok || key == it.key();
    if (!ok) throw parse_failure("unknown field '" + it.key() + "' in input");
  }
}

Json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_failure("cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw parse_failure(std::string("input is not valid JSON: ") + e.what());
  }
}

struct LoadedJob {
  QMatrix matrix;
  SliceFrame frame;
};

UnitImaginary axis_from_json(const Json& v, const char* what) {
  Quaternion q;
  try {
    q = quaternion_from_json(v);
  } catch (const std::invalid_argument& e) {
    throw parse_failure(std::string(what) + ": " + e.what());
  }
  if (std::fabs(q.w) > 1e-9)
    throw parse_failure(std::string(what) + " must be purely imaginary");
  try {
    return UnitImaginary(q);
  } catch (const std::invalid_argument& e) {
    throw parse_failure(std::string(what) + ": " + e.what());
  }
}

SliceFrame frame_from_spec(const JobSpec& spec, const Json* file_frame) {
  std::optional<UnitImaginary> m, n;
  if (file_frame != nullptr) {
    reject_unknown_fields(*file_frame, {"m", "n"});
    if (file_frame->contains("m"))
      m = axis_from_json((*file_frame)["m"], "frame axis m");
    if (file_frame->contains("n"))
      n = axis_from_json((*file_frame)["n"], "frame axis n");
  }
  // flags win over the file so one fixture can be probed in many frames
  if (spec.m_axis != "0,1,0,0" || !m)
    m = parse_unit_imaginary(spec.m_axis, "frame axis m");
  if (!spec.n_axis.empty())
    n = parse_unit_imaginary(spec.n_axis, "frame axis n");
  if (!n) return SliceFrame::around(*m);
  try {
    return SliceFrame(*m, *n);
  } catch (const std::invalid_argument& e) {
    throw parse_failure(e.what());
  }
}

LoadedJob load_matrix_job(const JobSpec& spec) {
  const Json doc = load_input(spec.input_path);
  if (!doc.is_object()) throw parse_failure("input must be a JSON object");
  reject_unknown_fields(doc, {"matrix", "frame"});
  if (!doc.contains("matrix")) throw parse_failure("input lacks 'matrix'");
  QMatrix matrix;
  try {
    matrix = qmatrix_from_json(doc["matrix"]);
  } catch (const std::invalid_argument& e) {
    throw parse_failure(e.what());
  }
  if (!matrix.is_square()) throw parse_failure("matrix must be square");
  const Json* frame_obj =
      doc.contains("frame") ? &doc["frame"] : nullptr;
  if (frame_obj != nullptr && !frame_obj->is_object())
    throw parse_failure("'frame' must be an object");
  return {std::move(matrix), frame_from_spec(spec, frame_obj)};
}

Json frame_json(const SliceFrame& frame) {
  return Json{{"m", to_json(frame.m.value())}, {"n", to_json(frame.n.value())}};
}

Json header_json(const JobSpec& spec, const SliceFrame& frame) {
  return Json{{"version", kLibraryVersion},
              {"command", spec.command},
              {"frame", frame_json(frame)},
              {"tolerance", spec.tol},
              {"seed", spec.seed}};
}

// --- commands --------------------------------------------------------------

int run_check(const JobSpec& spec, Json& report) {
  const LoadedJob job = load_matrix_job(spec);
  const OperatorClass flags = classify(job.matrix, spec.tol);
  report = header_json(spec, job.frame);
  Json flag_list = Json::array();
  if (flags.normal) flag_list.push_back("normal");
  if (flags.self_adjoint) flag_list.push_back("self_adjoint");
  if (flags.anti_self_adjoint) flag_list.push_back("anti_self_adjoint");
  if (flags.unitary) flag_list.push_back("unitary");
  if (flags.positive) flag_list.push_back("positive");
  report["n"] = job.matrix.rows();
  report["flags"] = flag_list;
  report["residuals"] = Json{
      {"normal", flags.normal_residual},
      {"self_adjoint", flags.self_adjoint_residual},
      {"anti_self_adjoint", flags.anti_self_adjoint_residual},
      {"unitary", flags.unitary_residual}};
  if (flags.self_adjoint) report["min_eigenvalue"] = flags.min_eigenvalue;
  report["norm"] = Json{{"frobenius", frobenius_norm(job.matrix)},
                        {"spectral", operator_norm(job.frame, job.matrix)}};
  return kExitPass;
}

int run_decompose(const JobSpec& spec, Json& report) {
  const LoadedJob job = load_matrix_job(spec);
  const EigenSystem system = spectral_decompose(job.matrix, job.frame, spec.tol);
  const ComplexStructure structure = construct_j(system, job.frame);
  const double scale = std::max(1.0, frobenius_norm(job.matrix));
  const double commutation =
      std::max(commutator_norm(structure.j, job.matrix),
               commutator_norm(structure.j, adjoint(job.matrix))) /
      scale;

  report = header_json(spec, job.frame);
  Json eigenvalues = Json::array();
  for (std::size_t c = 0; c < system.clusters.size(); ++c)
    eigenvalues.push_back(Json{{"alpha", system.clusters[c].alpha},
                               {"beta", system.clusters[c].beta},
                               {"multiplicity", system.multiplicities[c]}});
  const QMatrix rebuilt =
      scale_columns(system.basis, system.value_quaternions()) *
      adjoint(system.basis);
  const double reconstruction =
      frobenius_norm(job.matrix - rebuilt) / scale;

  report["eigenvalues"] = eigenvalues;
  report["residuals"] = Json{{"normality", system.normality_residual},
                             {"eigensystem", system.eigen_residual},
                             {"basis_orthonormality", system.unitarity_residual},
                             {"j_anti_self_adjoint",
                              structure.anti_self_adjoint_residual},
                             {"j_unitary", structure.unitarity_residual},
                             {"commutation", commutation},
                             {"reconstruction", reconstruction}};
  report["U"] = to_json(system.basis);
  report["J"] = to_json(structure.j);
  report["basis"] = to_json(system.basis);  // the slice Hilbert basis columns
  const bool ok = system.eigen_residual <= 1e-9 && commutation <= 1e-9 &&
                  reconstruction <= 1e-9;
  report["pass"] = ok;
  return ok ? kExitPass : kExitToleranceFailure;
}

int run_measure(const JobSpec& spec, Json& report) {
  const LoadedJob job = load_matrix_job(spec);
  const QSpectralMeasure measure =
      build_measure(job.matrix, job.frame, spec.tol, spec.seed);
  report = header_json(spec, job.frame);
  Json points = Json::array();
  double worst = 0.0;
  for (const SpectralAtom& atom : measure.atoms) {
    points.push_back(Json{{"lambda", Json::array({atom.lambda.alpha,
                                                  atom.lambda.beta})},
                          {"rank", atom.rank},
                          {"projection_residual", atom.projector_residual}});
    worst = std::max(worst, atom.projector_residual);
  }
  const QMatrix rebuilt = reconstruct_operator(measure);
  const double reconstruction =
      frobenius_norm(job.matrix - rebuilt) /
      std::max(1.0, frobenius_norm(job.matrix));
  report["points"] = points;
  report["residuals"] =
      Json{{"normality", measure.normality_residual},
           {"projection", worst},
           {"j_commutation", measure.structure.commutation_residual},
           {"reconstruction", reconstruction}};
  report["projectors"] = [&] {
    Json arr = Json::array();
    for (const SpectralAtom& atom : measure.atoms)
      arr.push_back(to_json(atom.projector));
    return arr;
  }();
  const bool ok = reconstruction <= 1e-9 && worst <= 1e-10;
  report["pass"] = ok;
  return ok ? kExitPass : kExitToleranceFailure;
}

int run_verify(const JobSpec& spec, Json& report) {
  QMatrix matrix;
  SliceFrame frame = SliceFrame::standard();
  if (spec.input_path.empty()) {
    frame = frame_from_spec(spec, nullptr);
    Rng rng(spec.seed);
    matrix = random_normal_operator(spec.dim, frame, rng);
  } else {
    LoadedJob job = load_matrix_job(spec);
    matrix = std::move(job.matrix);
    frame = job.frame;
  }
  const VerificationReport result =
      run_verification(matrix, frame, spec.tol / kDefaultTol, spec.seed);
  report = header_json(spec, frame);
  Json properties = Json::array();
  for (const PropertyResult& p : result.properties)
    properties.push_back(Json{{"name", p.name},
                              {"residual", p.residual},
                              {"tolerance", p.tolerance},
                              {"pass", p.pass}});
  report["properties"] = properties;
  report["pass"] = result.pass;
  if (!result.pass) report["first_failure"] = result.first_failure;
  return result.pass ? kExitPass : kExitToleranceFailure;
}

int run_evolve(const JobSpec& spec, Json& report) {
  const LoadedJob job = load_matrix_job(spec);
  const OperatorClass flags = classify(job.matrix, spec.tol);
  const QSpectralMeasure measure =
      build_measure(job.matrix, job.frame, spec.tol);
  const QMatrix id = QMatrix::identity(job.matrix.rows());

  report = header_json(spec, job.frame);
  report["anti_self_adjoint"] = flags.anti_self_adjoint;
  double alpha_lo = 0.0, alpha_hi = 0.0;
  for (const SpectralAtom& atom : measure.atoms) {
    alpha_lo = std::min(alpha_lo, atom.lambda.alpha);
    alpha_hi = std::max(alpha_hi, atom.lambda.alpha);
  }
  Json grid = Json::array();
  bool ok = true;
  for (double tau : {0.0, 0.1, 0.5, 1.0, 2.0, 10.0}) {
    const QMatrix e = functional_calculus(
        measure,
        [tau](std::complex<double> z) { return std::exp(tau * z); });
    const QMatrix e_minus = functional_calculus(
        measure,
        [tau](std::complex<double> z) { return std::exp(-tau * z); });
    const double inverse_residual = frobenius_norm(e * e_minus - id);
    const double unitarity = frobenius_norm(e * adjoint(e) - id);
    // cancellation in exp(tT) exp(-tT) grows with the real spectral spread
    const double amplification = std::exp(tau * (alpha_hi - alpha_lo));
    Json entry{{"t", tau}, {"inverse_residual", inverse_residual}};
    ok = ok && inverse_residual <= 1e-8 * amplification;
    entry["unitarity_residual"] = unitarity;
    if (flags.anti_self_adjoint) ok = ok && unitarity <= 1e-9;
    grid.push_back(entry);
  }
  report["grid"] = grid;
  report["pass"] = ok;
  return ok ? kExitPass : kExitToleranceFailure;
}

int run_tower(const JobSpec& spec, Json& report) {
  SliceFrame frame = frame_from_spec(spec, nullptr);
  DiagonalSymbol symbol{DiagonalSymbol::Family::kTimesM, {}, frame.m};
  std::vector<std::size_t> sizes = default_tower_sizes();
  if (!spec.input_path.empty()) {
    const Json doc = load_input(spec.input_path);
    if (!doc.is_object()) throw parse_failure("input must be a JSON object");
    reject_unknown_fields(doc, {"family", "custom_prefix", "sizes", "frame"});
    if (doc.contains("frame")) {
      if (!doc["frame"].is_object()) throw parse_failure("'frame' must be an object");
      frame = frame_from_spec(spec, &doc["frame"]);
      symbol.m = frame.m;
    }
    if (doc.contains("family")) {
      if (!doc["family"].is_string()) throw parse_failure("'family' must be a string");
      try {
        symbol = DiagonalSymbol::parse_family(doc["family"], frame.m);
      } catch (const std::invalid_argument& e) {
        throw parse_failure(e.what());
      }
    }
    if (doc.contains("custom_prefix")) {
      if (!doc["custom_prefix"].is_array())
        throw parse_failure("'custom_prefix' must be an array");
      try {
        for (const Json& entry : doc["custom_prefix"])
          symbol.custom_prefix.push_back(quaternion_from_json(entry));
      } catch (const std::invalid_argument& e) {
        throw parse_failure(e.what());
      }
    }
    if (doc.contains("sizes")) {
      if (!doc["sizes"].is_array()) throw parse_failure("'sizes' must be an array");
      sizes.clear();
      for (const Json& entry : doc["sizes"]) {
        if (!entry.is_number_unsigned() || entry.get<std::size_t>() == 0)
          throw parse_failure("'sizes' must hold positive integers");
        sizes.push_back(entry.get<std::size_t>());
      }
    }
  }
  if (!spec.sizes.empty()) sizes = parse_sizes(spec.sizes);

  TruncationTower tower;
  try {
    tower = build_tower(symbol, sizes);
  } catch (const std::invalid_argument& e) {
    throw parse_failure(e.what());
  }
  const UnboundednessSignature sig = unboundedness_signature(tower, frame);
  const ConsistencyReport consistency =
      measure_consistency(tower, frame, 6, spec.seed);

  report = header_json(spec, frame);
  report["family"] = symbol.family_name();
  Json levels = Json::array();
  for (const UnboundednessLevel& level : sig.levels)
    levels.push_back(Json{{"size", level.size},
                          {"operator_norm", level.operator_norm},
                          {"z_norm", level.z_norm},
                          {"j_commutation", level.j_commutation}});
  report["levels"] = levels;
  report["norm_growth_unbounded"] = sig.norm_growth_unbounded;
  report["z_norms_below_one"] = sig.z_norms_below_one;
  report["z_norms_monotone"] = sig.z_norms_monotone;
  Json pairs = Json::array();
  for (const ConsistencyPair& pair : consistency.pairs)
    pairs.push_back(Json{{"sizes", Json::array({pair.small_size,
                                                pair.large_size})},
                         {"matrix_elements", pair.matrix_element_residual},
                         {"scalar_measures", pair.measure_residual},
                         {"excluded_region", pair.excluded_region_residual}});
  report["consistency"] = Json{{"pairs", pairs},
                               {"max_residual", consistency.max_residual},
                               {"domain_note", consistency.domain_note}};
  bool ok = sig.z_norms_below_one && consistency.max_residual <= 1e-10;
  double j_worst = 0.0;
  for (const UnboundednessLevel& level : sig.levels)
    j_worst = std::max(j_worst, level.j_commutation);
  ok = ok && j_worst <= 1e-9;
  report["pass"] = ok;
  return ok ? kExitPass : kExitToleranceFailure;
}

void emit(const Json& report, const std::string& output_path) {
  const std::string text = dump_json(report);
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw std::runtime_error("cannot open output file '" + output_path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  JobSpec spec;
  CLI::App app{
      "qspectral: spectral decomposition of normal quaternion matrices"};
  app.add_option("--cmd", spec.command,
                 "check | decompose | measure | verify | evolve | tower")
      ->required();
  app.add_option("--in", spec.input_path, "input JSON document");
  app.add_option("--out", spec.output_path, "report path (stdout when absent)");
  app.add_option("--m", spec.m_axis, "frame axis m as 'w,x,y,z' (default i)");
  app.add_option("--n", spec.n_axis, "frame axis n as 'w,x,y,z'");
  app.add_option("--tol", spec.tol, "base tolerance (default 1e-10)");
  app.add_option("--seed", spec.seed, "seed for randomized suites");
  app.add_option("--sizes", spec.sizes, "tower sizes as 'n1,n2,...'");
  app.add_option("--dim", spec.dim,
                 "dimension of the generated operator when --in is absent");
  CLI11_PARSE(app, argc, argv);

  Json report;
  int status = kExitPass;
  try {
    if (spec.tol <= 0) throw parse_failure("--tol must be positive");
    if ((spec.command == "check" || spec.command == "decompose" ||
         spec.command == "measure" || spec.command == "evolve") &&
        spec.input_path.empty())
      throw parse_failure("--in is required for this command");
    if (spec.command == "check")
      status = run_check(spec, report);
    else if (spec.command == "decompose")
      status = run_decompose(spec, report);
    else if (spec.command == "measure")
      status = run_measure(spec, report);
    else if (spec.command == "verify")
      status = run_verify(spec, report);
    else if (spec.command == "evolve")
      status = run_evolve(spec, report);
    else if (spec.command == "tower")
      status = run_tower(spec, report);
    else
      throw parse_failure("unknown command '" + spec.command + "'");
  } catch (const parse_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseFailure;
  } catch (const normality_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    report = Json{{"version", kLibraryVersion},
                  {"command", spec.command},
                  {"error", "operator is not normal"},
                  {"normality_residual", e.residual()}};
    try {
      emit(report, spec.output_path);
    } catch (const std::exception&) {
    }
    return kExitNotNormal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitToleranceFailure;
  }

  try {
    emit(report, spec.output_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitToleranceFailure;
  }
  if (status == kExitToleranceFailure && report.contains("first_failure"))
    std::cerr << "first failing property: "
              << report["first_failure"].get<std::string>() << "\n";
  return status;
}
