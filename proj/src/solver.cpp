#include "gcpack/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

namespace gcpack {

namespace {

std::string describe(const AdmissibilityReport& rep) {
  std::ostringstream msg;
  msg << "targets are not admissible";
  if (!rep.nonpositive.empty()) {
    msg << " (nonpositive target at " << rep.nonpositive.size()
        << " vertex/vertices)";
  } else {
    msg << " (violating subset of size " << rep.worst_subset.size()
        << ", slack " << rep.slack << ")";
  }
  return msg.str();
}

void require_config(const SolveConfig& cfg) {
  if (!(std::isfinite(cfg.tol) && cfg.tol > 0))
    throw std::invalid_argument("tol must be finite and > 0");
  if (cfg.max_steps < 0)
    throw std::invalid_argument("max_steps must be >= 0");
  if (cfg.trace_every < 1)
    throw std::invalid_argument("trace_every must be >= 1");
  if (cfg.precheck_trials < 0)
    throw std::invalid_argument("precheck_trials must be >= 0");
  if (cfg.method != SolveMethod::Newton && !(std::isfinite(cfg.dt) && cfg.dt > 0))
    throw std::invalid_argument("dt must be finite and > 0");
  if (cfg.method == SolveMethod::Calabi && !(std::isfinite(cfg.p) && cfg.p > 1))
    throw std::invalid_argument("p must be finite and > 1");
}

class Recorder {
 public:
  Recorder(const SolveConfig& cfg, const Eigen::VectorXd& L_hat,
           std::vector<TraceRow>& rows)
      : cfg_(cfg), L_hat_(L_hat), rows_(rows) {}

  void force(int step, double t, double rate, const PackingState& state,
             const CurvatureReport& rep) {
    if (step == last_) return;
    last_ = step;
    TraceRow row;
    row.step = step;
    row.t = t;
    row.max_rate = rate;
    const Eigen::VectorXd g = rep.L - L_hat_;
    row.res_inf = g.lpNorm<Eigen::Infinity>();
    row.res_2 = g.norm();
    row.energy = 0.5 * g.squaredNorm();
    if (cfg_.record_state) row.s = state.s;
    rows_.push_back(std::move(row));
  }

  void maybe(int step, double t, double rate, const PackingState& state,
             const CurvatureReport& rep) {
    if (step % cfg_.trace_every == 0) force(step, t, rate, state, rep);
  }

 private:
  const SolveConfig& cfg_;
  const Eigen::VectorXd& L_hat_;
  std::vector<TraceRow>& rows_;
  int last_ = -1;
};

double res_inf(const CurvatureReport& rep, const Eigen::VectorXd& L_hat) {
  return (rep.L - L_hat).lpNorm<Eigen::Infinity>();
}

double energy_of(const CurvatureReport& rep, const Eigen::VectorXd& L_hat) {
  return 0.5 * (rep.L - L_hat).squaredNorm();
}

SolveStatus flow_loop(const CellComplex& complex, const Targets& targets,
                      const SolveConfig& cfg, PackingState& state,
                      CurvatureReport& rep, FaceHints& hints, Recorder& rec,
                      int& steps) {
  const Eigen::VectorXd& L_hat = targets.L_hat;
  auto field = [&](const CurvatureReport& r) -> Eigen::VectorXd {
    if (cfg.method == SolveMethod::Calabi) return rhs_calabi(r, targets, cfg.p);
    return L_hat - r.L;
  };
  // Evaluates the field at a trial state; false = unusable (step too big).
  auto stage = [&](const Eigen::VectorXd& s_try, CurvatureReport* rep_out,
                   Eigen::VectorXd* f_out) {
    if (!s_try.allFinite()) return false;
    CurvatureReport r;
    try {
      r = full_report(complex, PackingState{s_try}, &hints);
    } catch (const std::runtime_error&) {
      return false;  // dual-curvature solve failed at this extreme state
    } catch (const std::domain_error&) {
      return false;  // curvature overflowed (exp of a huge coordinate)
    }
    if (f_out) {
      *f_out = field(r);
      if (!f_out->allFinite()) return false;
    }
    if (rep_out) *rep_out = std::move(r);
    return true;
  };

  double energy = energy_of(rep, L_hat);
  double t = 0;
  double dt = cfg.dt;
  int streak = 0;

  rec.force(0, 0, 0, state, rep);
  while (steps < cfg.max_steps) {
    if (res_inf(rep, L_hat) <= cfg.tol) {
      rec.force(steps, t, 0, state, rep);
      return SolveStatus::Converged;
    }
    const Eigen::VectorXd f1 = field(rep);
    if (!f1.allFinite()) {
      rec.force(steps, t, 0, state, rep);
      return SolveStatus::Diverged;
    }

    bool accepted = false;
    while (dt >= kMinStep) {
      Eigen::VectorXd f2, f3, f4;
      CurvatureReport rep_new;
      Eigen::VectorXd s_new;
      bool ok = stage(state.s + (0.5 * dt) * f1, nullptr, &f2) &&
                stage(state.s + (0.5 * dt) * f2, nullptr, &f3) &&
                stage(state.s + dt * f3, nullptr, &f4);
      if (ok) {
        s_new = state.s + (dt / 6.0) * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
        ok = stage(s_new, &rep_new, nullptr);
      }
      if (ok) {
        const double e_new = energy_of(rep_new, L_hat);
        ok = std::isfinite(e_new) && e_new <= energy;
        if (ok) {
          const double rate = (s_new - state.s).lpNorm<Eigen::Infinity>() / dt;
          state.s = std::move(s_new);
          rep = std::move(rep_new);
          energy = e_new;
          t += dt;
          ++steps;
          if (++streak >= 5) {
            dt = std::min(2.0 * dt, kMaxStep);
            streak = 0;
          }
          rec.maybe(steps, t, rate, state, rep);
          accepted = true;
          break;
        }
      }
      dt *= 0.5;
      streak = 0;
    }
    if (!accepted) {
      // The energy cannot be decreased at any resolvable step size.
      rec.force(steps, t, 0, state, rep);
      return SolveStatus::MaxSteps;
    }
  }
  rec.force(steps, t, 0, state, rep);
  return res_inf(rep, L_hat) <= cfg.tol ? SolveStatus::Converged
                                        : SolveStatus::MaxSteps;
}

SolveStatus newton_loop(const CellComplex& complex, const Targets& targets,
                        const SolveConfig& cfg, PackingState& state,
                        CurvatureReport& rep, FaceHints& hints, Recorder& rec,
                        int& steps) {
  const Eigen::VectorXd& L_hat = targets.L_hat;
  double energy = energy_of(rep, L_hat);
  double t = 0;

  rec.force(0, 0, 0, state, rep);
  while (steps < cfg.max_steps) {
    const Eigen::VectorXd g = rep.L - L_hat;
    if (g.lpNorm<Eigen::Infinity>() <= cfg.tol) {
      rec.force(steps, t, 0, state, rep);
      return SolveStatus::Converged;
    }
    if (!g.allFinite() || !rep.M.allFinite()) {
      rec.force(steps, t, 0, state, rep);
      return SolveStatus::Diverged;
    }

    Eigen::LLT<Eigen::MatrixXd> llt(rep.M);
    if (llt.info() != Eigen::Success) {
      // The system matrix is positive definite at every interior state but
      // loses that numerically when a (typically forced) descent drags the
      // state to an extreme; there is no usable Newton direction there.
      rec.force(steps, t, 0, state, rep);
      return SolveStatus::Diverged;
    }
    const Eigen::VectorXd delta = llt.solve(-g);
    if (!delta.allFinite()) {
      rec.force(steps, t, 0, state, rep);
      return SolveStatus::Diverged;
    }

    // Armijo on 0.5*||L - L_hat||^2; the directional derivative along the
    // Newton direction is exactly -||g||^2 (M is symmetric).
    const double gg = g.squaredNorm();
    double len = 1.0;
    bool ok = false;
    CurvatureReport rep_try;
    Eigen::VectorXd s_try;
    for (int bt = 0; bt < 40; ++bt) {
      s_try = state.s + len * delta;
      bool usable = s_try.allFinite();
      if (usable) {
        try {
          rep_try = full_report(complex, PackingState{s_try}, &hints);
        } catch (const std::runtime_error&) {
          usable = false;  // dual-curvature solve failed at this extreme state
        } catch (const std::domain_error&) {
          usable = false;  // curvature overflowed (exp of a huge coordinate)
        }
      }
      if (usable) {
        const double e_try = energy_of(rep_try, L_hat);
        if (std::isfinite(e_try) && e_try <= energy - 1e-4 * len * gg) {
          energy = e_try;
          ok = true;
          break;
        }
      }
      len *= 0.5;
    }
    if (!ok) {
      rec.force(steps, t, 0, state, rep);
      return SolveStatus::MaxSteps;
    }

    state.s = std::move(s_try);
    rep = std::move(rep_try);
    t += len;
    ++steps;
    rec.maybe(steps, t, delta.lpNorm<Eigen::Infinity>(), state, rep);
  }
  rec.force(steps, t, 0, state, rep);
  return res_inf(rep, L_hat) <= cfg.tol ? SolveStatus::Converged
                                        : SolveStatus::MaxSteps;
}

}  // namespace

InadmissibleTargets::InadmissibleTargets(AdmissibilityReport rep)
    : std::runtime_error(describe(rep)), report_(std::move(rep)) {}

Eigen::VectorXd rhs_calabi(const CurvatureReport& rep, const Targets& targets,
                           double p) {
  if (rep.A.rows() != targets.L_hat.size() || rep.K.size() != targets.L_hat.size())
    throw std::invalid_argument(
        "rhs_calabi needs a full report matching the targets");
  const Eigen::VectorXd g = rep.L - targets.L_hat;
  return p_laplacian(rep.A, g, p) - rep.K.cwiseProduct(g);
}

Eigen::VectorXd rhs_calabi(const CellComplex& complex, const PackingState& state,
                           const Targets& targets, double p) {
  return rhs_calabi(full_report(complex, state), targets, p);
}

SolveResult solve(const CellComplex& complex, const Targets& targets,
                  const SolveConfig& config, const Eigen::VectorXd* s0) {
  require_config(config);
  if (!complex.valid())
    throw std::invalid_argument("complex has unresolved violations");
  if (targets.L_hat.size() != complex.vertex_count())
    throw std::invalid_argument("targets do not match the complex");

  SolveResult out;
  out.precheck = decide(complex, targets.L_hat, config.precheck_trials,
                        config.precheck_seed);
  if (out.precheck.verdict == Admissibility::NotAdmissible && !config.force)
    throw InadmissibleTargets(out.precheck);

  PackingState state = PackingState::zero(complex.vertex_count());
  if (s0) {
    if (s0->size() != complex.vertex_count())
      throw std::invalid_argument("initial state does not match the complex");
    if (!s0->allFinite())
      throw std::domain_error("initial state contains non-finite entries");
    state.s = *s0;
  }

  FaceHints hints;
  CurvatureReport rep = full_report(complex, state, &hints);
  Recorder rec(config, targets.L_hat, out.trace);
  out.steps = 0;
  out.status = config.method == SolveMethod::Newton
                   ? newton_loop(complex, targets, config, state, rep, hints,
                                 rec, out.steps)
                   : flow_loop(complex, targets, config, state, rep, hints,
                               rec, out.steps);
  out.state = std::move(state);
  out.report = std::move(rep);
  return out;
}

}  // namespace gcpack
