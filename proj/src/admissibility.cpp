#include "gcpack/admissibility.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace gcpack {

namespace {

constexpr double kPi = std::numbers::pi;

void require_inputs(const CellComplex& complex, const Eigen::VectorXd& L_hat) {
  if (!complex.valid())
    throw std::invalid_argument("complex has unresolved violations");
  if (L_hat.size() != complex.vertex_count())
    throw std::invalid_argument("target vector has " +
                                std::to_string(L_hat.size()) +
                                " entries for " +
                                std::to_string(complex.vertex_count()) +
                                " vertices");
}

std::vector<int> nonpositive_entries(const Eigen::VectorXd& L_hat) {
  std::vector<int> bad;
  for (Eigen::Index i = 0; i < L_hat.size(); ++i)
    if (!(std::isfinite(L_hat[i]) && L_hat[i] > 0))
      bad.push_back(static_cast<int>(i));
  return bad;
}

// term[f][m] = pi * min(m, N(f) - 2 + Y_f/pi), the most curvature the face
// can hand to any m of its vertices; term[f][0] = 0.
std::vector<std::vector<double>> face_terms(const CellComplex& complex) {
  std::vector<std::vector<double>> term(complex.face_count());
  for (int f = 0; f < complex.face_count(); ++f) {
    const int n = complex.face_size(f);
    const double cap = n - 2.0 + complex.face_deficit(f) / kPi;
    term[f].resize(n + 1);
    for (int m = 0; m <= n; ++m)
      term[f][m] = kPi * std::min(static_cast<double>(m), cap);
  }
  return term;
}

double score_membership(const CellComplex& complex,
                        const Eigen::VectorXd& L_hat,
                        const std::vector<std::vector<double>>& term,
                        const std::vector<char>& in_W) {
  double lhs = 0;
  for (int v = 0; v < complex.vertex_count(); ++v)
    if (in_W[v]) lhs += L_hat[v];
  double rhs = 0;
  for (int f = 0; f < complex.face_count(); ++f) {
    int hits = 0;
    for (int v : complex.face_vertices(f)) hits += in_W[v];
    rhs += term[f][hits];
  }
  return rhs - lhs;
}

std::vector<int> members(const std::vector<char>& in_W) {
  std::vector<int> out;
  for (size_t v = 0; v < in_W.size(); ++v)
    if (in_W[v]) out.push_back(static_cast<int>(v));
  return out;
}

}  // namespace

double subset_slack(const CellComplex& complex, const Eigen::VectorXd& L_hat,
                    const std::vector<int>& W) {
  require_inputs(complex, L_hat);
  if (W.empty()) throw std::invalid_argument("subset must be nonempty");
  std::vector<char> in_W(complex.vertex_count(), 0);
  for (int v : W) {
    if (v < 0 || v >= complex.vertex_count())
      throw std::out_of_range("subset vertex index out of range");
    in_W[v] = 1;
  }
  return score_membership(complex, L_hat, face_terms(complex), in_W);
}

AdmissibilityReport check(const CellComplex& complex,
                          const Eigen::VectorXd& L_hat) {
  require_inputs(complex, L_hat);
  const int n = complex.vertex_count();
  if (n > kExhaustiveCap)
    throw std::invalid_argument(
        "exhaustive check capped at " + std::to_string(kExhaustiveCap) +
        " vertices (" + std::to_string(n) + " given); use check_sampled");

  AdmissibilityReport rep;
  rep.exhaustive = true;
  rep.nonpositive = nonpositive_entries(L_hat);
  if (!rep.nonpositive.empty()) {
    rep.verdict = Admissibility::NotAdmissible;
    rep.worst_subset = rep.nonpositive;
    rep.slack = -std::numeric_limits<double>::infinity();
    return rep;
  }

  const auto term = face_terms(complex);
  std::vector<uint32_t> face_mask(complex.face_count(), 0);
  for (int f = 0; f < complex.face_count(); ++f)
    for (int v : complex.face_vertices(f)) face_mask[f] |= 1u << v;

  double min_slack = std::numeric_limits<double>::infinity();
  uint32_t argmin = 0;
  const uint32_t end = 1u << n;
  for (uint32_t mask = 1; mask < end; ++mask) {
    double lhs = 0;
    for (uint32_t bits = mask; bits; bits &= bits - 1)
      lhs += L_hat[std::countr_zero(bits)];
    double rhs = 0;
    for (int f = 0; f < complex.face_count(); ++f)
      rhs += term[f][std::popcount(mask & face_mask[f])];
    const double slack = rhs - lhs;
    if (slack < min_slack) {
      min_slack = slack;
      argmin = mask;
    }
  }

  rep.slack = min_slack;
  for (uint32_t bits = argmin; bits; bits &= bits - 1)
    rep.worst_subset.push_back(std::countr_zero(bits));
  rep.verdict = min_slack > kSlackTol ? Admissibility::Admissible
                                      : Admissibility::NotAdmissible;
  return rep;
}

AdmissibilityReport check_sampled(const CellComplex& complex,
                                  const Eigen::VectorXd& L_hat, int trials,
                                  unsigned seed) {
  require_inputs(complex, L_hat);
  if (trials < 0) throw std::invalid_argument("trials must be >= 0");
  const int n = complex.vertex_count();

  AdmissibilityReport rep;
  rep.exhaustive = false;
  rep.nonpositive = nonpositive_entries(L_hat);
  if (!rep.nonpositive.empty()) {
    rep.verdict = Admissibility::NotAdmissible;
    rep.worst_subset = rep.nonpositive;
    rep.slack = -std::numeric_limits<double>::infinity();
    return rep;
  }

  const auto term = face_terms(complex);
  auto score = [&](const std::vector<char>& in_W) {
    return score_membership(complex, L_hat, term, in_W);
  };

  double best_slack = std::numeric_limits<double>::infinity();
  std::vector<char> best;
  auto consider = [&](const std::vector<char>& in_W) {
    const double slack = score(in_W);
    if (slack < best_slack) {
      best_slack = slack;
      best = in_W;
    }
    return slack <= kSlackTol;
  };

  auto violated = [&]() {
    rep.verdict = Admissibility::NotAdmissible;
    rep.worst_subset = members(best);
    rep.slack = best_slack;
    return rep;
  };

  std::vector<char> in_W(n, 0);
  // Singletons and the full set.
  for (int v = 0; v < n; ++v) {
    std::fill(in_W.begin(), in_W.end(), 0);
    in_W[v] = 1;
    if (consider(in_W)) return violated();
  }
  std::fill(in_W.begin(), in_W.end(), 1);
  if (consider(in_W)) return violated();
  // Each face's vertex set.
  for (int f = 0; f < complex.face_count(); ++f) {
    std::fill(in_W.begin(), in_W.end(), 0);
    for (int v : complex.face_vertices(f)) in_W[v] = 1;
    if (consider(in_W)) return violated();
  }
  // Uniform random subsets (mt19937 keeps the draw sequence deterministic).
  std::mt19937 gen(seed);
  for (int t = 0; t < trials; ++t) {
    bool any = false;
    for (int v = 0; v < n; ++v) {
      in_W[v] = static_cast<char>(gen() & 1u);
      any = any || in_W[v];
    }
    if (!any) in_W[gen() % n] = 1;
    if (consider(in_W)) return violated();
  }

  // Greedy single-vertex flips from the best candidate so far.
  in_W = best;
  int size = 0;
  for (char c : in_W) size += c;
  for (int round = 0; round < 10 * n; ++round) {
    int flip = -1;
    double flip_slack = best_slack;
    for (int v = 0; v < n; ++v) {
      if (in_W[v] && size == 1) continue;  // keep the subset nonempty
      in_W[v] ^= 1;
      const double slack = score(in_W);
      in_W[v] ^= 1;
      if (slack < flip_slack) {
        flip_slack = slack;
        flip = v;
      }
    }
    if (flip < 0) break;
    in_W[flip] ^= 1;
    size += in_W[flip] ? 1 : -1;
    best_slack = flip_slack;
    best = in_W;
    if (best_slack <= kSlackTol) return violated();
  }

  rep.verdict = Admissibility::Inconclusive;
  rep.worst_subset = members(best);
  rep.slack = best_slack;
  return rep;
}

AdmissibilityReport decide(const CellComplex& complex,
                           const Eigen::VectorXd& L_hat, int trials,
                           unsigned seed) {
  if (complex.vertex_count() <= kExhaustiveCap) return check(complex, L_hat);
  return check_sampled(complex, L_hat, trials, seed);
}

}  // namespace gcpack
