#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gcpack/cell_complex.hpp"

namespace gcpack {

// A target vector L_hat is achievable by some packing iff it is strictly
// positive and, for every nonempty vertex subset W,
//
//   sum_{w in W} L_hat[w]  <  sum_{f in F_W} pi * min(N(f,W), N(f) - 2 + Y_f/pi)
//
// where F_W are the faces meeting W and N(f,W) counts W-vertices on f. The
// feasible set is open: a subset whose slack (rhs - lhs) is <= kSlackTol is
// treated as a violation.

enum class Admissibility { Admissible, NotAdmissible, Inconclusive };

// Exhaustive subset enumeration is capped at this vertex count.
inline constexpr int kExhaustiveCap = 22;
inline constexpr double kSlackTol = 1e-12;

struct AdmissibilityReport {
  Admissibility verdict = Admissibility::Inconclusive;
  // Subset attaining the smallest slack seen (the violator if not admissible,
  // the binding subset otherwise). Ascending vertex indices.
  std::vector<int> worst_subset;
  double slack = 0;
  // Vertices whose target is nonpositive or non-finite; nonempty forces
  // NotAdmissible before any subset is scored (slack is -inf then).
  std::vector<int> nonpositive;
  // True when every nonempty subset was scored.
  bool exhaustive = false;
};

// Scores all 2^|V|-1 subsets. Requires |V| <= kExhaustiveCap (throws
// std::invalid_argument above the cap) and a valid complex.
AdmissibilityReport check(const CellComplex& complex,
                          const Eigen::VectorXd& L_hat);

// Randomized screen for large complexes: `trials` uniform random subsets plus
// all singletons, the full set, and every face's vertex set; the best
// candidate is then driven downhill by single-vertex flips. A found violation
// is definitive (NotAdmissible); otherwise the verdict is Inconclusive.
AdmissibilityReport check_sampled(const CellComplex& complex,
                                  const Eigen::VectorXd& L_hat, int trials,
                                  unsigned seed);

// check() when |V| <= kExhaustiveCap, check_sampled() otherwise.
AdmissibilityReport decide(const CellComplex& complex,
                           const Eigen::VectorXd& L_hat, int trials = 200,
                           unsigned seed = 12345u);

// Slack of one subset (rhs - lhs); exposed for tests and diagnostics.
double subset_slack(const CellComplex& complex, const Eigen::VectorXd& L_hat,
                    const std::vector<int>& W);

}  // namespace gcpack
