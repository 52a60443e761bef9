#include "gcpack/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gcpack {

namespace {

using nlohmann::json;

const char* const kRootKeys[] = {"vertices", "faces", "targets", "initial"};

std::string item_path(const std::string& base, size_t i) {
  return base + "/" + std::to_string(i);
}

double finite_number(const json& value, const std::string& path) {
  if (!value.is_number())
    throw ParseError(path, "must be a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw ParseError(path, "must be finite");
  return x;
}

std::map<std::string, double> positive_map(const json& value,
                                           const std::string& path,
                                           const char* what) {
  if (!value.is_object()) throw ParseError(path, "must be an object");
  std::map<std::string, double> out;
  for (const auto& [id, entry] : value.items()) {
    const std::string entry_path = path + "/" + id;
    const double x = finite_number(entry, entry_path);
    if (x <= 0)
      throw ParseError(entry_path, std::string(what) + " must be > 0");
    out[id] = x;
  }
  return out;
}

std::string join_ids(const CellComplex& complex, const std::vector<int>& W) {
  std::string out = "{";
  for (size_t i = 0; i < W.size(); ++i) {
    if (i) out += ", ";
    out += complex.vertex_id(W[i]);
  }
  out += "}";
  return out;
}

std::string csv_cell(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    out += c;
    if (c == '"') out += '"';
  }
  out += "\"";
  return out;
}

json curvature_object(const CellComplex& complex, const Eigen::VectorXd& v) {
  json out = json::object();
  for (int i = 0; i < complex.vertex_count(); ++i)
    out[complex.vertex_id(i)] = v[i];
  return out;
}

}  // namespace

ParseError::ParseError(std::string path, const std::string& what)
    : std::runtime_error(path.empty() ? what : path + ": " + what),
      path_(std::move(path)) {}

ProblemDocument parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    // Covers syntax errors and library-side range errors (e.g. a literal
    // like 1e999 that overflows double during parsing).
    throw ParseError("", e.what());
  }
  if (!j.is_object()) throw ParseError("", "top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* k : kRootKeys) known = known || key == k;
    if (!known) throw ParseError("/" + key, "unknown key");
  }

  ProblemDocument doc;

  if (!j.contains("vertices")) throw ParseError("", "missing 'vertices'");
  const json& jv = j["vertices"];
  if (!jv.is_array()) throw ParseError("/vertices", "must be an array");
  for (size_t i = 0; i < jv.size(); ++i) {
    const std::string path = item_path("/vertices", i);
    if (!jv[i].is_string()) throw ParseError(path, "must be a string");
    const std::string id = jv[i].get<std::string>();
    if (id.empty()) throw ParseError(path, "must be non-empty");
    doc.complex_spec.vertices.push_back(id);
  }

  if (!j.contains("faces")) throw ParseError("", "missing 'faces'");
  const json& jf = j["faces"];
  if (!jf.is_array()) throw ParseError("/faces", "must be an array");
  for (size_t f = 0; f < jf.size(); ++f) {
    const std::string face_path = item_path("/faces", f);
    const json& entry = jf[f];
    if (!entry.is_object()) throw ParseError(face_path, "must be an object");
    for (const auto& [key, value] : entry.items()) {
      (void)value;
      if (key != "vertices" && key != "Y")
        throw ParseError(face_path + "/" + key, "unknown key");
    }
    if (!entry.contains("vertices"))
      throw ParseError(face_path, "missing 'vertices'");
    if (!entry.contains("Y")) throw ParseError(face_path, "missing 'Y'");

    FaceSpec face;
    const json& verts = entry["vertices"];
    if (!verts.is_array())
      throw ParseError(face_path + "/vertices", "must be an array");
    for (size_t i = 0; i < verts.size(); ++i) {
      const std::string path = item_path(face_path + "/vertices", i);
      if (!verts[i].is_string()) throw ParseError(path, "must be a string");
      face.vertices.push_back(verts[i].get<std::string>());
    }
    face.Y = finite_number(entry["Y"], face_path + "/Y");
    doc.complex_spec.faces.push_back(std::move(face));
  }

  if (j.contains("targets")) {
    doc.has_targets = true;
    doc.targets = positive_map(j["targets"], "/targets", "target");
  }
  if (j.contains("initial")) {
    doc.has_initial = true;
    doc.initial = positive_map(j["initial"], "/initial", "curvature");
  }
  return doc;
}

ProblemDocument load_problem(const std::string& path) {
  return parse_problem(read_file(path));
}

std::map<std::string, double> parse_curvature_map(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError("", e.what());
  }
  if (!j.is_object()) throw ParseError("", "top level must be an object");
  if (!j.contains("k")) throw ParseError("", "missing 'k'");
  return positive_map(j["k"], "/k", "curvature");
}

std::map<std::string, double> load_curvature_map(const std::string& path) {
  return parse_curvature_map(read_file(path));
}

Eigen::VectorXd curvatures_from_map(const CellComplex& complex,
                                    const std::map<std::string, double>& k) {
  Eigen::VectorXd out = Eigen::VectorXd::Ones(complex.vertex_count());
  for (const auto& [id, value] : k) {
    if (!complex.has_vertex(id))
      throw std::out_of_range("curvature given for unknown vertex '" + id +
                              "'");
    if (!(std::isfinite(value) && value > 0))
      throw std::domain_error("curvature for '" + id +
                              "' must be finite and > 0");
    out[complex.vertex_index(id)] = value;
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string trace_csv(const std::vector<TraceRow>& rows,
                      const std::vector<std::string>& ids, bool with_state) {
  std::string out = "step,t,res_inf,res_2,max_rate";
  if (with_state)
    for (const auto& id : ids) out += "," + csv_cell("s_" + id);
  out += "\n";
  for (const TraceRow& row : rows) {
    out += std::to_string(row.step);
    out += "," + format_double(row.t);
    out += "," + format_double(row.res_inf);
    out += "," + format_double(row.res_2);
    out += "," + format_double(row.max_rate);
    if (with_state)
      for (Eigen::Index i = 0; i < row.s.size(); ++i)
        out += "," + format_double(row.s[i]);
    out += "\n";
  }
  return out;
}

std::string eval_json(const CellComplex& complex,
                      const CurvatureReport& report) {
  if (report.M.rows() != complex.vertex_count())
    throw std::invalid_argument("eval_json needs a full report");
  json out;
  out["L"] = curvature_object(complex, report.L);
  out["faces"] = json::array();
  for (size_t f = 0; f < report.faces.size(); ++f) {
    json face;
    face["area"] = report.faces[f].area;
    face["index"] = f;
    face["k_f"] = report.faces[f].k_f;
    out["faces"].push_back(std::move(face));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(report.M);
  const auto& ev = eig.eigenvalues();
  out["jacobian_condition"] = ev[ev.size() - 1] / ev[0];
  return out.dump(2) + "\n";
}

std::string solve_json(const CellComplex& complex, const SolveResult& result,
                       SolveMethod method) {
  json out;
  out["L"] = curvature_object(complex, result.report.L);
  out["k"] = curvature_object(complex, result.state.k());
  out["method"] = method_name(method);
  out["residual_inf"] =
      result.trace.empty() ? 0.0 : result.trace.back().res_inf;
  out["status"] = status_name(result.status);
  out["steps"] = result.steps;
  return out.dump(2) + "\n";
}

std::string check_text(const CellComplex& complex,
                       const AdmissibilityReport& report) {
  std::string out = std::string("admissible: ");
  switch (report.verdict) {
    case Admissibility::Admissible:
      out += "yes";
      break;
    case Admissibility::NotAdmissible:
      out += "no";
      break;
    case Admissibility::Inconclusive:
      out += "inconclusive";
      break;
  }
  out += "\n";
  if (!report.nonpositive.empty()) {
    out += "nonpositive targets: " + join_ids(complex, report.nonpositive) +
           "\n";
    return out;
  }
  out += "subset: " + join_ids(complex, report.worst_subset) + "\n";
  out += "slack: " + format_double(report.slack) + "\n";
  return out;
}

const char* method_name(SolveMethod method) {
  switch (method) {
    case SolveMethod::Calabi:
      return "calabi";
    case SolveMethod::Newton:
      return "newton";
    case SolveMethod::Gradient:
      return "gradient";
  }
  return "unknown";
}

const char* status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::MaxSteps:
      return "max_steps";
    case SolveStatus::Diverged:
      return "diverged";
  }
  return "unknown";
}

const char* verdict_name(Admissibility verdict) {
  switch (verdict) {
    case Admissibility::Admissible:
      return "admissible";
    case Admissibility::NotAdmissible:
      return "not_admissible";
    case Admissibility::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

SolveMethod parse_method(const std::string& name) {
  if (name == "calabi") return SolveMethod::Calabi;
  if (name == "newton") return SolveMethod::Newton;
  if (name == "gradient") return SolveMethod::Gradient;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected calabi, newton or gradient)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out.good()) throw std::runtime_error("cannot write '" + path + "'");
}

}  // namespace gcpack
