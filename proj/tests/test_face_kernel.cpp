#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gcpack/face_kernel.hpp"
#include "support.hpp"

using namespace gcpack;
using testing::close;
using testing::kPi;
using testing::Rng;
namespace oracle = testing::oracle;

namespace {

// Independent reference for the arc curvature close to k = 1: the shared
// series evaluated in extended precision with many terms.
double seam_reference(double k_f, double k_i) {
  const long double u =
      (static_cast<long double>(k_i) - 1.0L) * (static_cast<long double>(k_i) + 1.0L);
  const long double w = u / (static_cast<long double>(k_f) * k_f);
  long double sum = 0.0L;
  long double wp = 1.0L;
  for (int m = 0; m <= 15; ++m) {
    const long double term = wp / (2 * m + 1);
    sum += (m % 2) ? -term : term;
    wp *= w;
  }
  return static_cast<double>(2.0L * k_i / k_f * sum);
}

double total_arc(const FaceConfig& cfg) {
  const FacePacking pk = face_solve(cfg);
  double s = 0;
  for (double L : pk.arc_curvature) s += L;
  return s;
}

}  // namespace

TEST_SUITE("face_kernel") {

TEST_CASE("classify splits kinds at the horocycle band") {
  auto circle = classify(2.0);
  CHECK(circle.kind == CircleKind::Circle);
  REQUIRE(circle.radius.has_value());
  CHECK(close(*circle.radius, oracle::arccoth2, 1e-14));

  auto horo = classify(1.0);
  CHECK(horo.kind == CircleKind::Horocycle);
  CHECK(!horo.radius.has_value());
  CHECK(classify(1.0 + 0.9e-9).kind == CircleKind::Horocycle);
  CHECK(classify(1.0 - 0.9e-9).kind == CircleKind::Horocycle);
  CHECK(classify(1.0 + 1.1e-9).kind == CircleKind::Circle);
  CHECK(classify(1.0 - 1.1e-9).kind == CircleKind::Hypercycle);

  auto hyper = classify(0.5);
  CHECK(hyper.kind == CircleKind::Hypercycle);
  REQUIRE(hyper.radius.has_value());
  CHECK(close(*hyper.radius, std::atanh(0.5), 1e-14));

  CHECK_THROWS_AS(classify(0.0), std::domain_error);
  CHECK_THROWS_AS(classify(-1.0), std::domain_error);
  CHECK_THROWS_AS(classify(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(classify(std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("theta_dual hits the frozen fixtures and its limits") {
  CHECK(close(theta_dual(2.0, 1.0), oracle::theta_2_1, 1e-14));
  CHECK(close(theta_dual(std::sqrt(5.0), 2.0), kPi / 2, 1e-14));

  // Sweeps (0, pi) monotonically in k_f.
  CHECK(theta_dual(1.0 + 1e-12, 1.0) < 1e-5);
  CHECK(theta_dual(1e12, 1.0) > kPi - 1e-5);
  double prev = 0;
  for (double k_f = 1.01; k_f < 100; k_f *= 1.7) {
    const double th = theta_dual(k_f, 0.7);
    CHECK(th > prev);
    prev = th;
  }

  CHECK_THROWS_AS(theta_dual(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(theta_dual(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(theta_dual(2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(theta_dual(2.0, -2.0), std::domain_error);
}

TEST_CASE("theta_dual derivatives match finite differences") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const double k_f = 1.0 + std::exp(rng.uniform(-4.0, 3.0));
    const double k_i = std::exp(rng.uniform(-1.5, 1.5));
    const double h_f = 1e-6 * k_f;
    const double fd_f =
        (theta_dual(k_f + h_f, k_i) - theta_dual(k_f - h_f, k_i)) / (2 * h_f);
    CHECK(close(theta_dual_dkf(k_f, k_i), fd_f, 1e-6, 1e-3));
    CHECK(theta_dual_dkf(k_f, k_i) > 0);

    const double h_i = 1e-6 * std::max(1.0, k_i);
    const double fd_i =
        (theta_dual(k_f, k_i + h_i) - theta_dual(k_f, k_i - h_i)) / (2 * h_i);
    CHECK(close(theta_dual_dki(k_f, k_i), fd_i, 1e-6, 1e-3));
    CHECK(theta_dual_dki(k_f, k_i) < 0);
  }
}

TEST_CASE("solve_dual_curvature reproduces the symmetric fixtures exactly") {
  FaceConfig tri{{1.0, 1.0, 1.0}, 2.0 * kPi};
  CHECK(close(solve_dual_curvature(tri), 2.0, 1e-12));

  FaceConfig square{{2.0, 2.0, 2.0, 2.0}, 2.0 * kPi};
  CHECK(close(solve_dual_curvature(square), std::sqrt(5.0), 1e-12));
}

TEST_CASE("solve_dual_curvature meets the angle tolerance on random faces") {
  Rng rng(102);
  for (int trial = 0; trial < 300; ++trial) {
    const FaceConfig cfg = testing::random_face(rng);
    const double k_f = solve_dual_curvature(cfg);
    REQUIRE(k_f > 1.0);
    double sum = 0;
    for (double k : cfg.k) sum += theta_dual(k_f, k);
    CHECK(std::abs(sum - cfg.alpha) <= 1e-12);
  }
}

TEST_CASE("solve_dual_curvature is monotone in alpha and honors hints") {
  FaceConfig cfg{{0.4, 1.0, 2.5, 1.3}, 0.0};
  double prev = 1.0;
  for (double alpha = 0.5; alpha < 4.0 * kPi - 0.5; alpha += 0.7) {
    cfg.alpha = alpha;
    const double k_f = solve_dual_curvature(cfg);
    CHECK(k_f > prev);
    prev = k_f;
  }

  cfg.alpha = 5.0;
  const double cold = solve_dual_curvature(cfg);
  for (double hint : {cold, cold * 0.3, cold * 40.0, 0.0, -3.0,
                      std::numeric_limits<double>::quiet_NaN()}) {
    CHECK(close(solve_dual_curvature(cfg, hint), cold, 1e-9));
  }
}

TEST_CASE("solve_dual_curvature rejects bad input loudly") {
  CHECK_THROWS_AS(solve_dual_curvature(FaceConfig{{1, 1}, 3.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_dual_curvature(FaceConfig{{1, 1, 1}, 0.0}),
                  std::domain_error);
  CHECK_THROWS_AS(solve_dual_curvature(FaceConfig{{1, 1, 1}, 3 * kPi}),
                  std::domain_error);
  CHECK_THROWS_AS(solve_dual_curvature(FaceConfig{{1, -1, 1}, 3.0}),
                  std::domain_error);
  // alpha too small to resolve: the root would sit closer to 1 than the
  // double grid can represent.
  CHECK_THROWS_AS(solve_dual_curvature(FaceConfig{{500, 500, 500}, 1e-13}),
                  std::runtime_error);
}

TEST_CASE("phi_own hits the frozen fixtures and the horocycle limit") {
  CHECK(close(phi_own(std::sqrt(5.0), 2.0), oracle::phi_sqrt5_2, 1e-12));
  CHECK(close(phi_own(2.0, 0.5), oracle::phi_2_half, 1e-12));
  CHECK_THROWS_AS(phi_own(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(phi_own(2.0, 1.0 + 0.5e-9), std::domain_error);
  // Just outside the band the angle is tiny but well-defined.
  CHECK(phi_own(2.0, 1.0 + 2e-9) < 1e-4);
  CHECK(phi_own(2.0, 1.0 - 2e-9) < 1e-4);
}

TEST_CASE("arc_curvature: fixtures, horocycle value, range, identity") {
  CHECK(close(arc_curvature(2.0, 1.0), 1.0, 1e-14));
  CHECK(close(arc_curvature(std::sqrt(5.0), 2.0), oracle::L_sqrt5_2, 1e-12));
  CHECK(close(arc_curvature(3.7, 1.0), 2.0 / 3.7, 1e-14));

  Rng rng(103);
  for (int trial = 0; trial < 300; ++trial) {
    const double k_f = 1.0 + std::exp(rng.uniform(-6.0, 4.0));
    const double k_i = std::exp(rng.uniform(-2.0, 2.0));
    const double L = arc_curvature(k_f, k_i);
    CHECK(L > 0);
    CHECK(L < kPi);
    // L = k * phi / sqrt(|k^2-1|), the arc-length route.
    if (std::abs(k_i - 1.0) > 1e-6) {
      const double root = std::sqrt(std::abs((k_i - 1) * (k_i + 1)));
      CHECK(close(L, k_i * phi_own(k_f, k_i) / root, 1e-12));
    }
  }
}

TEST_CASE("arc_curvature is seamless across the series band") {
  for (double k_f : {1.05, 1.5, 2.0, 17.0}) {
    for (double d : {-5e-4, -2e-4, -1.0001e-4, -0.9999e-4, -1e-5, -1e-7, 0.0,
                     1e-7, 1e-5, 0.9999e-4, 1.0001e-4, 2e-4, 5e-4}) {
      const double k_i = 1.0 + d;
      CHECK(close(arc_curvature(k_f, k_i), seam_reference(k_f, k_i), 5e-13));
    }
  }
}

TEST_CASE("arc_curvature derivatives match finite differences") {
  Rng rng(104);
  for (int trial = 0; trial < 300; ++trial) {
    const double k_f = 1.0 + std::exp(rng.uniform(-4.0, 3.0));
    const double k_i =
        trial % 7 == 0 ? 1.0 + rng.uniform(-2e-4, 2e-4)
                       : std::exp(rng.uniform(-1.5, 1.5));
    const double h_f = 1e-6 * k_f;
    const double fd_f = (arc_curvature(k_f + h_f, k_i) -
                         arc_curvature(k_f - h_f, k_i)) /
                        (2 * h_f);
    CHECK(close(arc_curvature_dkf(k_f, k_i), fd_f, 1e-6, 1e-3));
    CHECK(arc_curvature_dkf(k_f, k_i) < 0);

    const double h_i = 1e-6 * std::max(0.25, k_i);
    const double fd_i = (arc_curvature(k_f, k_i + h_i) -
                         arc_curvature(k_f, k_i - h_i)) /
                        (2 * h_i);
    CHECK(close(arc_curvature_dki(k_f, k_i), fd_i, 1e-6, 1e-3));
  }
}

TEST_CASE("face_total_curvature_dkj covers all three branches") {
  CHECK(close(face_total_curvature_dkj(2.0, 1.0), oracle::tail_2_1, 1e-14));

  // Fixed-branch spot checks against re-solved finite differences.
  FaceConfig cfg{{1.5, 1.0, 0.6, 2.2}, 0.0};
  for (double alpha : {1.0, 3.0, 6.0}) {
    cfg.alpha = alpha;
    const double k_f = solve_dual_curvature(cfg);
    for (int j = 0; j < cfg.size(); ++j) {
      const double analytic = face_total_curvature_dkj(k_f, cfg.k[j]);
      CHECK(analytic > 0);
      const double fd = testing::fd_face(cfg, j, total_arc);
      CHECK(close(analytic, fd, 1e-6, 1e-3));
    }
  }
}

TEST_CASE("face_solve: horocycle triangle fixture to 1e-10") {
  const FacePacking pk = face_solve(FaceConfig{{1, 1, 1}, 2 * kPi});
  CHECK(close(pk.k_f, 2.0, 1e-12));
  for (int i = 0; i < 3; ++i) {
    CHECK(close(pk.theta_dual[i], oracle::theta_2_1, 1e-12));
    CHECK(close(pk.arc_curvature[i], 1.0, 1e-12));
    CHECK(pk.phi_own[i] == 0.0);
  }
  CHECK(close(pk.area, oracle::triangle_area, 1e-12));
}

TEST_CASE("face_solve: square fixture to 1e-10") {
  const FacePacking pk = face_solve(FaceConfig{{2, 2, 2, 2}, 2 * kPi});
  CHECK(close(pk.k_f, std::sqrt(5.0), 1e-12));
  for (int i = 0; i < 4; ++i) {
    CHECK(close(pk.theta_dual[i], kPi / 2, 1e-12));
    CHECK(close(pk.arc_curvature[i], oracle::L_sqrt5_2, 1e-12));
    CHECK(close(pk.phi_own[i], oracle::phi_sqrt5_2, 1e-12));
  }
  CHECK(close(pk.area, oracle::square_area, 1e-12));
}

TEST_CASE("face_solve invariants on random faces") {
  Rng rng(105);
  for (int trial = 0; trial < 200; ++trial) {
    const FaceConfig cfg = testing::random_face(rng);
    const FacePacking pk = face_solve(cfg);
    double theta_sum = 0;
    double arc_sum = 0;
    for (int i = 0; i < cfg.size(); ++i) {
      CHECK(pk.theta_dual[i] > 0);
      CHECK(pk.theta_dual[i] < kPi);
      CHECK(pk.arc_curvature[i] > 0);
      CHECK(pk.arc_curvature[i] < kPi);
      theta_sum += pk.theta_dual[i];
      arc_sum += pk.arc_curvature[i];
    }
    CHECK(std::abs(theta_sum - cfg.alpha) <= 1e-12);
    CHECK(close(pk.area, cfg.size() * kPi - cfg.alpha - arc_sum, 1e-12));
    CHECK(pk.area > 0);
  }
}

TEST_CASE("face_jacobian matches finite differences entrywise") {
  Rng rng(106);
  for (int trial = 0; trial < 60; ++trial) {
    const FaceConfig cfg = testing::random_face(rng);
    const FaceJacobian J = face_jacobian(cfg);
    const int n = cfg.size();

    for (int j = 0; j < n; ++j) {
      const double fd_kf = testing::fd_face(
          cfg, j, [](const FaceConfig& c) { return solve_dual_curvature(c); });
      CHECK(close(J.dkf_dk[j], fd_kf, 1e-5, 1e-3));

      for (int i = 0; i < n; ++i) {
        const double fd_L = testing::fd_face(cfg, j, [i](const FaceConfig& c) {
          return face_solve(c).arc_curvature[i];
        });
        CHECK(close(J.dL_dk(i, j), fd_L, 1e-5, 1e-3));
      }
    }
  }
}

TEST_CASE("face_jacobian closedness: k_j dL_i/dk_j = k_i dL_j/dk_i") {
  Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const FaceConfig cfg = testing::random_face(rng);
    const FaceJacobian J = face_jacobian(cfg);
    const int n = cfg.size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(close(cfg.k[j] * J.dL_dk(i, j), cfg.k[i] * J.dL_dk(j, i), 1e-12,
                    1e-6));

    // The closed-form column sums agree with summing the chain rule.
    for (int j = 0; j < n; ++j) {
      double col = 0;
      for (int i = 0; i < n; ++i) col += J.dL_dk(i, j);
      CHECK(close(J.dsum_dk[j], col, 1e-9, 1e-6));
      CHECK(J.dsum_dk[j] > 0);
    }
  }
}

TEST_CASE("face_layout produces orthogonal circles with the right contacts") {
  Rng rng(108);
  for (int trial = 0; trial < 100; ++trial) {
    const FaceConfig cfg = testing::random_face(rng);
    const FacePacking pk = face_solve(cfg);
    const auto circles = face_layout(cfg, pk);
    REQUIRE(circles.size() == static_cast<size_t>(cfg.size()) + 1);

    const LayoutCircle& dual = circles[0];
    CHECK(dual.dual);
    CHECK(dual.cx == 0.0);
    CHECK(dual.cy == 0.0);
    const double b = std::sqrt((pk.k_f - 1) * (pk.k_f + 1));
    CHECK(close(dual.radius, 1.0 / (pk.k_f + b), 1e-14));

    for (int i = 0; i < cfg.size(); ++i) {
      const LayoutCircle& c = circles[i + 1];
      CHECK(!c.dual);
      CHECK(c.kind == classify(cfg.k[i]).kind);
      const double dist2 = c.cx * c.cx + c.cy * c.cy;
      // Orthogonality to the dual circle.
      CHECK(close(dist2, dual.radius * dual.radius + c.radius * c.radius,
                  1e-12));
      // The crossing points sit on the dual circle at angle +- theta/2.
      const double px = dual.radius * std::cos(c.angle - c.theta / 2);
      const double py = dual.radius * std::sin(c.angle - c.theta / 2);
      const double to_center = std::hypot(px - c.cx, py - c.cy);
      CHECK(close(to_center, c.radius, 1e-10));

      const double dist = std::sqrt(dist2);
      if (c.kind == CircleKind::Circle) {
        CHECK(dist + c.radius < 1.0 + 1e-12);  // stays inside the disk
      } else if (c.kind == CircleKind::Horocycle) {
        CHECK(close(dist + c.radius, 1.0, 1e-9));  // tangent to the boundary
      } else {
        CHECK(dist + c.radius > 1.0 - 1e-12);  // crosses the boundary
        CHECK(dist - c.radius < 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("face_layout validates its inputs") {
  const FaceConfig cfg{{1, 1, 1}, 2 * kPi};
  FacePacking pk = face_solve(cfg);
  pk.theta_dual.pop_back();
  CHECK_THROWS_AS(face_layout(cfg, pk), std::invalid_argument);
}

}  // TEST_SUITE
