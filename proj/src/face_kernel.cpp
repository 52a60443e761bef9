#include "gcpack/face_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gcpack {

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(k^2 - 1) without the cancellation of squaring first.
double sqrt_sq_m1(double k) { return std::sqrt((k - 1.0) * (k + 1.0)); }

void require_dual(double k_f) {
  if (!(std::isfinite(k_f) && k_f > 1.0))
    throw std::domain_error("dual curvature must be finite and > 1, got " +
                            std::to_string(k_f));
}

void require_curvature(double k_i) {
  if (!(std::isfinite(k_i) && k_i > 0.0))
    throw std::domain_error("circle curvature must be finite and > 0, got " +
                            std::to_string(k_i));
}

void require_config(const FaceConfig& cfg) {
  if (cfg.size() < 3)
    throw std::invalid_argument("face needs at least 3 circles, got " +
                                std::to_string(cfg.size()));
  for (double k : cfg.k) require_curvature(k);
  if (!(std::isfinite(cfg.alpha) && cfg.alpha > 0.0 &&
        cfg.alpha < cfg.size() * kPi))
    throw std::domain_error("dual angle must lie in (0, n*pi), got " +
                            std::to_string(cfg.alpha));
}

// atan(sqrt(w))/sqrt(w) for w > 0, atanh(sqrt(-w))/sqrt(-w) for w < 0, and the
// shared Maclaurin series sum (-w)^m/(2m+1) when |w| is too small for either
// quotient to be meaningful. Smooth across w = 0.
double grow_ratio(double w) {
  if (std::abs(w) < 1e-3) {
    return 1.0 + w * (-1.0 / 3 + w * (1.0 / 5 + w * (-1.0 / 7 + w * (1.0 / 9))));
  }
  if (w > 0) {
    const double x = std::sqrt(w);
    return std::atan(x) / x;
  }
  const double x = std::sqrt(-w);
  return std::atanh(x) / x;
}

// (x - atan(x))/x^3 continued through w = x^2 <= 0 as (atanh(x) - x)/x^3 with
// x = sqrt(-w); equals the series sum (-w)^m/(2m+3). Both closed forms cancel
// catastrophically near 0, hence the series branch.
double tail_ratio(double w) {
  if (std::abs(w) < 2.5e-3) {
    return 1.0 / 3 +
           w * (-1.0 / 5 + w * (1.0 / 7 + w * (-1.0 / 9 + w * (1.0 / 11))));
  }
  if (w > 0) {
    const double x = std::sqrt(w);
    return (x - std::atan(x)) / (w * x);
  }
  const double x = std::sqrt(-w);
  return (std::atanh(x) - x) / (-w * x);
}

}  // namespace

CircleClass classify(double k) {
  require_curvature(k);
  if (std::abs(k - 1.0) < kHorocycleTol) return {CircleKind::Horocycle, {}};
  if (k > 1.0) return {CircleKind::Circle, std::atanh(1.0 / k)};
  return {CircleKind::Hypercycle, std::atanh(k)};
}

FaceConfig FaceConfig::from_deficit(std::vector<double> k, double Y) {
  return FaceConfig{std::move(k), 2.0 * kPi - Y};
}

double theta_dual(double k_f, double k_i) {
  require_dual(k_f);
  require_curvature(k_i);
  return 2.0 * std::atan2(sqrt_sq_m1(k_f), k_i);
}

double theta_dual_dkf(double k_f, double k_i) {
  require_dual(k_f);
  require_curvature(k_i);
  const double b = sqrt_sq_m1(k_f);
  return 2.0 * k_f * k_i / (b * (k_i * k_i + k_f * k_f - 1.0));
}

double theta_dual_dki(double k_f, double k_i) {
  require_dual(k_f);
  require_curvature(k_i);
  return -2.0 * sqrt_sq_m1(k_f) / (k_f * k_f + k_i * k_i - 1.0);
}

double solve_dual_curvature(const FaceConfig& cfg, double hint) {
  require_config(cfg);
  auto residual = [&cfg](double k_f) {
    double s = 0;
    for (double k : cfg.k) s += theta_dual(k_f, k);
    return s - cfg.alpha;
  };
  auto slope = [&cfg](double k_f) {
    double s = 0;
    for (double k : cfg.k) s += theta_dual_dkf(k_f, k);
    return s;
  };

  // The bracket reaches down to the first double above 1 so that faces with
  // very small circle curvatures (dual circle nearly a horocycle) still solve.
  double lo = std::nextafter(1.0, 2.0);
  const double f_lo = residual(lo);
  if (f_lo >= 0) {
    // The angle sum at the smallest representable dual curvature already
    // meets or exceeds alpha: the true root cannot be represented as a
    // double. Accept only if the smallest curvature is within tolerance.
    if (f_lo <= kAngleTol) return lo;
    throw std::runtime_error(
        "solve_dual_curvature: root below the numeric bracket");
  }
  double hi = (std::isfinite(hint) && hint > lo) ? std::max(2.0, hint) : 2.0;
  while (residual(hi) < 0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300)
      throw std::runtime_error("solve_dual_curvature: bracket exhausted");
  }

  double x = (hint > lo && hint < hi) ? hint : 0.5 * (lo + hi);
  for (int it = 0; it < kMaxSolveIter; ++it) {
    const double f = residual(x);
    if (std::abs(f) <= kAngleTol) return x;
    if (f > 0)
      hi = x;
    else
      lo = x;
    // Once the bracket collapses to two adjacent doubles the angle equation
    // is resolved as finely as the floating-point grid allows; very near 1
    // that grid is coarser than the angle tolerance. Take the endpoint with
    // the smaller angle error.
    if (std::nextafter(lo, hi) >= hi)
      return std::abs(residual(lo)) <= std::abs(residual(hi)) ? lo : hi;
    double next = x - f / slope(x);
    // Newton is kept honest by the bracket: fall back to bisection whenever
    // the step leaves it or is too small to move x off its current double.
    if (!std::isfinite(next) || next <= lo || next >= hi || next == x)
      next = 0.5 * (lo + hi);
    x = next;
  }
  throw std::runtime_error("solve_dual_curvature: no convergence after " +
                           std::to_string(kMaxSolveIter) + " iterations");
}

double phi_own(double k_f, double k_i) {
  require_dual(k_f);
  require_curvature(k_i);
  if (std::abs(k_i - 1.0) < kHorocycleTol)
    throw std::domain_error(
        "phi_own is undefined for a horocycle (center at infinity)");
  if (k_i > 1.0) return 2.0 * std::atan(sqrt_sq_m1(k_i) / k_f);
  return 2.0 * std::atanh(std::sqrt((1.0 - k_i) * (1.0 + k_i)) / k_f);
}

double arc_curvature(double k_f, double k_i) {
  require_dual(k_f);
  require_curvature(k_i);
  const double u = (k_i - 1.0) * (k_i + 1.0);
  return 2.0 * k_i / k_f * grow_ratio(u / (k_f * k_f));
}

double arc_curvature_dkf(double k_f, double k_i) {
  require_dual(k_f);
  require_curvature(k_i);
  return -2.0 * k_i / (k_f * k_f + k_i * k_i - 1.0);
}

double arc_curvature_dki(double k_f, double k_i) {
  require_dual(k_f);
  require_curvature(k_i);
  const double u = (k_i - 1.0) * (k_i + 1.0);
  const double kf2 = k_f * k_f;
  const double w = u / kf2;
  if (std::abs(w) < 1e-3) {
    // L = (2 k_i / k_f) S(w): dL/dk_i = (2/k_f) S + (4 k_i^2 / k_f^3) S'.
    const double S =
        1.0 + w * (-1.0 / 3 + w * (1.0 / 5 + w * (-1.0 / 7 + w * (1.0 / 9))));
    const double Sp = -1.0 / 3 + w * (2.0 / 5 + w * (-3.0 / 7 + w * (4.0 / 9)));
    return 2.0 / k_f * S + 4.0 * k_i * k_i / (kf2 * k_f) * Sp;
  }
  const double denom = kf2 + k_i * k_i - 1.0;
  if (w > 0) {
    const double d = std::sqrt(u);
    return -2.0 * std::atan(d / k_f) / (u * d) +
           2.0 * k_f * k_i * k_i / (u * denom);
  }
  const double c = std::sqrt(-u);
  return 2.0 * std::atanh(c / k_f) / (-u * c) -
         2.0 * k_f * k_i * k_i / (-u * denom);
}

double face_total_curvature_dkj(double k_f, double k_j) {
  require_dual(k_f);
  require_curvature(k_j);
  const double u = (k_j - 1.0) * (k_j + 1.0);
  const double kf2 = k_f * k_f;
  return 2.0 / (kf2 * k_f) * tail_ratio(u / kf2);
}

FacePacking face_solve(const FaceConfig& cfg, double hint) {
  FacePacking out;
  out.k_f = solve_dual_curvature(cfg, hint);
  const int n = cfg.size();
  out.theta_dual.resize(n);
  out.phi_own.resize(n);
  out.arc_curvature.resize(n);
  double total = 0;
  for (int i = 0; i < n; ++i) {
    const double k = cfg.k[i];
    out.theta_dual[i] = theta_dual(out.k_f, k);
    out.phi_own[i] =
        std::abs(k - 1.0) < kHorocycleTol ? 0.0 : phi_own(out.k_f, k);
    out.arc_curvature[i] = arc_curvature(out.k_f, k);
    total += out.arc_curvature[i];
  }
  out.area = n * kPi - cfg.alpha - total;
  return out;
}

FaceJacobian face_jacobian(const FaceConfig& cfg, double hint) {
  FaceJacobian J;
  J.packing = face_solve(cfg, hint);
  const int n = cfg.size();
  const double k_f = J.packing.k_f;

  double angle_slope = 0;
  for (int i = 0; i < n; ++i) angle_slope += theta_dual_dkf(k_f, cfg.k[i]);

  J.dkf_dk.resize(n);
  for (int j = 0; j < n; ++j)
    J.dkf_dk[j] = -theta_dual_dki(k_f, cfg.k[j]) / angle_slope;

  Eigen::VectorXd dL_dkf(n);
  for (int i = 0; i < n; ++i) dL_dkf[i] = arc_curvature_dkf(k_f, cfg.k[i]);

  J.dL_dk = dL_dkf * J.dkf_dk.transpose();
  for (int j = 0; j < n; ++j) J.dL_dk(j, j) += arc_curvature_dki(k_f, cfg.k[j]);

  J.dsum_dk.resize(n);
  for (int j = 0; j < n; ++j)
    J.dsum_dk[j] = face_total_curvature_dkj(k_f, cfg.k[j]);
  return J;
}

std::vector<LayoutCircle> face_layout(const FaceConfig& cfg,
                                      const FacePacking& packing) {
  if (static_cast<int>(packing.theta_dual.size()) != cfg.size())
    throw std::invalid_argument("face_layout: packing does not match config");
  require_dual(packing.k_f);

  const double R_f = 1.0 / (packing.k_f + sqrt_sq_m1(packing.k_f));
  std::vector<LayoutCircle> out;
  out.reserve(cfg.size() + 1);

  LayoutCircle dual;
  dual.kind = CircleKind::Circle;
  dual.dual = true;
  dual.radius = R_f;
  dual.theta = 2.0 * kPi;
  out.push_back(dual);

  double cursor = 0;
  for (int i = 0; i < cfg.size(); ++i) {
    const double th = packing.theta_dual[i];
    const double half = 0.5 * th;
    LayoutCircle c;
    c.kind = classify(cfg.k[i]).kind;
    c.theta = th;
    c.angle = cursor + half;
    cursor += th;
    c.radius = R_f * std::tan(half);
    const double dist = R_f / std::cos(half);
    c.cx = dist * std::cos(c.angle);
    c.cy = dist * std::sin(c.angle);
    out.push_back(c);
  }
  return out;
}

}  // namespace gcpack
