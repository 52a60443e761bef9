#pragma once

// Shared helpers for the unit and acceptance suites: frozen oracle constants,
// mixed absolute/relative comparison, random corpora and finite differences.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gcpack/assembly.hpp"
#include "gcpack/cell_complex.hpp"
#include "gcpack/face_kernel.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

// Reference values computed independently at 30 significant digits
// (bisection for dual curvatures, series/closed-form cross-checks for arcs)
// and frozen here.
namespace oracle {
// arccoth(2) = atanh(1/2)
inline constexpr double arccoth2 = 0.549306144334054845697622618461;
// theta(k_f=2, k_i=1) = 2*pi/3 (symmetric horocycle triangle)
inline constexpr double theta_2_1 = 2.09439510239319549230842892219;
// phi(k_f=sqrt5, k_i=2)
inline constexpr double phi_sqrt5_2 = 1.31811607165281796574566425465;
// phi(k_f=2, k_i=0.5) = 2*atanh(sqrt(0.75)/2)
inline constexpr double phi_2_half = 0.927197390085004737950876533293;
// arc curvature L(k_f=sqrt5, k_i=2) = (4/sqrt3)*atan(sqrt(3/5))
inline constexpr double L_sqrt5_2 = 1.52202933758385298986050716591;
// area of the square face, Y=0, k=(2,2,2,2): 2*pi - 4*L_sqrt5_2
inline constexpr double square_area = 0.195067956844174517483258102934;
// area of the triangle face, Y=0, k=(1,1,1): pi - 3
inline constexpr double triangle_area = 0.141592653589793238462643383279;
// d(total face curvature)/dk_j at k_f=2, k_j=1: 2/(3*2^3)
inline constexpr double tail_2_1 = 1.0 / 12.0;
// sup over x in (0,1/2] of x*atanh(sqrt(1-x^2)), attained at x = 1/2
inline constexpr double M2 = 0.658478948462408354312523173654;
// sup over x in (0,sqrt(3)/2] of (atanh(x)-x)/x^3, attained at the right end
inline constexpr double M3 = 0.694255990135856926749584679681;
}  // namespace oracle

// |a-b| <= tol * max(floor, |a|, |b|): relative above the floor, absolute
// tol*floor below it.
inline bool close(double a, double b, double tol, double floor = 1.0) {
  return std::abs(a - b) <= tol * std::max({floor, std::abs(a), std::abs(b)});
}

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  }
};

// Random face with curvatures that hit all three circle kinds: exact
// horocycles with probability ~1/8, otherwise k = exp(U[-1.3, 1.3]).
inline gcpack::FaceConfig random_face(Rng& rng, int min_n = 3, int max_n = 6) {
  gcpack::FaceConfig cfg;
  const int n = rng.uniform_int(min_n, max_n);
  cfg.k.resize(n);
  for (int i = 0; i < n; ++i)
    cfg.k[i] = rng.uniform_int(0, 7) == 0 ? 1.0 : std::exp(rng.uniform(-1.3, 1.3));
  cfg.alpha = rng.uniform(0.3, n * kPi - 0.5);
  return cfg;
}

// Random valid complex: faces drawn over a vertex pool, unused ids dropped,
// deficits kept away from the interval ends.
inline gcpack::ComplexSpec random_complex_spec(Rng& rng, int max_vertices = 12,
                                               int max_faces = 5) {
  const int pool = rng.uniform_int(3, max_vertices);
  const int n_faces = rng.uniform_int(1, max_faces);
  std::vector<int> order(pool);
  for (int i = 0; i < pool; ++i) order[i] = i;

  gcpack::ComplexSpec spec;
  std::vector<char> used(pool, 0);
  for (int f = 0; f < n_faces; ++f) {
    const int m = rng.uniform_int(3, std::min(5, pool));
    // Fisher-Yates prefix for a random m-subset in random cyclic order.
    for (int i = 0; i < m; ++i)
      std::swap(order[i], order[rng.uniform_int(i, pool - 1)]);
    gcpack::FaceSpec face;
    for (int i = 0; i < m; ++i) {
      face.vertices.push_back("v" + std::to_string(order[i]));
      used[order[i]] = 1;
    }
    face.Y = rng.uniform((2.0 - m) * kPi + 0.4, 2.0 * kPi - 0.4);
    spec.faces.push_back(std::move(face));
  }
  for (int i = 0; i < pool; ++i)
    if (used[i]) spec.vertices.push_back("v" + std::to_string(i));
  return spec;
}

// Instances whose flows converge briskly: deficits in [1.05*pi, 1.7*pi] keep
// the dual curvatures (and with them the flow's spectral floor) moderate.
inline gcpack::ComplexSpec flow_complex_spec(Rng& rng, int max_vertices = 8,
                                             int max_faces = 4) {
  gcpack::ComplexSpec spec = random_complex_spec(rng, max_vertices, max_faces);
  for (auto& face : spec.faces)
    face.Y = rng.uniform(1.05 * kPi, 1.7 * kPi);
  return spec;
}

inline Eigen::VectorXd random_vector(Rng& rng, int n, double lo, double hi) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

// Central difference d(value)/dk[j] of a face quantity recomputed from
// scratch at perturbed curvatures (alpha held fixed).
template <typename F>
double fd_face(const gcpack::FaceConfig& cfg, int j, F&& value) {
  const double h = 1e-6 * std::max(1.0, std::abs(cfg.k[j]));
  gcpack::FaceConfig up = cfg;
  gcpack::FaceConfig dn = cfg;
  up.k[j] += h;
  dn.k[j] -= h;
  return (value(up) - value(dn)) / (2.0 * h);
}

inline const char* fixture_dir() { return GCPACK_FIXTURE_DIR; }
inline const char* golden_dir() { return GCPACK_GOLDEN_DIR; }
inline const char* cli_path() { return GCPACK_CLI_PATH; }

inline std::string fixture(const std::string& name) {
  return std::string(GCPACK_FIXTURE_DIR) + "/" + name;
}
inline std::string golden(const std::string& name) {
  return std::string(GCPACK_GOLDEN_DIR) + "/" + name;
}

// Runs a shell command, captures stdout, returns the exit code.
struct RunResult {
  int exit_code = -1;
  std::string out;
};

inline RunResult run_command(const std::string& cmd) {
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
    result.out.append(buf, got);
  const int status = pclose(pipe);
  if (status >= 0 && WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);
  return result;
}

inline RunResult run_cli(const std::string& args) {
  return run_command(std::string(cli_path()) + " " + args + " 2>/dev/null");
}

}  // namespace testing
