#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcpack/admissibility.hpp"
#include "gcpack/assembly.hpp"
#include "gcpack/cell_complex.hpp"
#include "gcpack/solver.hpp"

namespace gcpack {

// Parse failure carrying a JSON-pointer-style location ("/faces/1/Y").
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A problem file: the complex, optional per-vertex targets (must cover every
// vertex when present), and optional initial curvatures (may be partial;
// unlisted vertices start at k = 1).
struct ProblemDocument {
  ComplexSpec complex_spec;
  std::map<std::string, double> targets;
  std::map<std::string, double> initial;
  bool has_targets = false;
  bool has_initial = false;
};

// Strict structural parse: unknown keys, wrong types, non-finite numbers and
// nonpositive target/initial values all raise ParseError with the offending
// path. Cross-element structure (duplicate ids, face arity, deficit ranges)
// is CellComplex's job, not the parser's.
ProblemDocument parse_problem(const std::string& text);
ProblemDocument load_problem(const std::string& path);

// Curvature file: JSON object with a "k" member mapping vertex ids to
// positive reals; other members are ignored so a solve output can be fed
// straight back in.
std::map<std::string, double> parse_curvature_map(const std::string& text);
std::map<std::string, double> load_curvature_map(const std::string& path);

// Dense curvature vector for a complex from an id -> k map. Requires known
// ids; missing vertices default to 1. Throws with the offending id.
Eigen::VectorXd curvatures_from_map(const CellComplex& complex,
                                    const std::map<std::string, double>& k);

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

// step,t,res_inf,res_2,max_rate[,s_<id>...] with one row per trace entry.
std::string trace_csv(const std::vector<TraceRow>& rows,
                      const std::vector<std::string>& ids, bool with_state);

// JSON texts (sorted keys, 2-space indent, trailing newline).
std::string eval_json(const CellComplex& complex, const CurvatureReport& report);
std::string solve_json(const CellComplex& complex, const SolveResult& result,
                       SolveMethod method);

// Three lines: verdict, subset (binding or violating), slack. Nonpositive
// targets replace the subset/slack lines with the offending vertices.
std::string check_text(const CellComplex& complex,
                       const AdmissibilityReport& report);

const char* method_name(SolveMethod method);
const char* status_name(SolveStatus status);
const char* verdict_name(Admissibility verdict);
// Throws std::invalid_argument for unknown names.
SolveMethod parse_method(const std::string& name);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gcpack
