#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gcpack/admissibility.hpp"
#include "gcpack/assembly.hpp"
#include "gcpack/cell_complex.hpp"

namespace gcpack {

// Inverse problem: find log-curvatures s with L(s) = L_hat.
//
//   Calabi    ds/dt = D_p(L - L_hat) - K .* (L - L_hat), integrated with RK4
//             and an adaptive step (halve when the energy 0.5*||L-L_hat||^2
//             increases, double after 5 straight accepts, capped at 1.0)
//   Gradient  ds/dt = -(L - L_hat), same stepping
//   Newton    M * delta = -(L - L_hat) with Armijo backtracking on the energy
//             (c = 1e-4, halving, at most 40 backtracks per step)
//
// All methods stop when ||L - L_hat||_inf <= tol.

enum class SolveMethod { Calabi, Newton, Gradient };

// Converged: residual met tol. MaxSteps: step budget exhausted, or the
// stepper stalled (flow step underflowed kMinStep / Newton line search found
// no decrease). Diverged: non-finite values at the current state.
enum class SolveStatus { Converged, MaxSteps, Diverged };

inline constexpr double kMaxStep = 1.0;
inline constexpr double kMinStep = 1e-13;

struct SolveConfig {
  SolveMethod method = SolveMethod::Newton;
  double p = 2.0;        // p-Laplacian exponent (> 1); Calabi only
  double dt = 0.1;       // initial flow step
  double tol = 1e-8;     // convergence threshold on ||L - L_hat||_inf
  int max_steps = 100000;
  int trace_every = 1;   // record every k-th accepted step (>= 1)
  bool record_state = false;  // keep s snapshots in the trace
  bool force = false;         // run even if the admissibility gate says no
  int precheck_trials = 200;  // sampled-gate budget for large complexes
  unsigned precheck_seed = 12345u;
};

// One recorded step. max_rate is the largest per-coordinate rate of change
// over the step leading to this row, ||s_m - s_prev||_inf / (t_m - t_prev)
// (0 for the initial row); energy is 0.5*||L - L_hat||_2^2. For Newton, t
// accumulates the accepted line-search lengths.
struct TraceRow {
  int step = 0;
  double t = 0;
  double res_inf = 0;
  double res_2 = 0;
  double max_rate = 0;
  double energy = 0;
  Eigen::VectorXd s;
};

struct SolveResult {
  PackingState state;
  SolveStatus status = SolveStatus::MaxSteps;
  int steps = 0;
  std::vector<TraceRow> trace;
  CurvatureReport report;        // at the final state
  AdmissibilityReport precheck;  // what the admissibility gate saw
};

// Thrown by solve() when the gate proves the targets inadmissible and the
// config does not force the run.
class InadmissibleTargets : public std::runtime_error {
 public:
  explicit InadmissibleTargets(AdmissibilityReport rep);
  const AdmissibilityReport& report() const { return report_; }

 private:
  AdmissibilityReport report_;
};

// Right-hand side of the combinatorial Calabi flow at a fully assembled state.
Eigen::VectorXd rhs_calabi(const CurvatureReport& report, const Targets& targets,
                           double p);
Eigen::VectorXd rhs_calabi(const CellComplex& complex, const PackingState& state,
                           const Targets& targets, double p);

SolveResult solve(const CellComplex& complex, const Targets& targets,
                  const SolveConfig& config = {},
                  const Eigen::VectorXd* s0 = nullptr);

}  // namespace gcpack
