#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace gcpack {

// Generalized circles in the hyperbolic plane, classified by their geodesic
// curvature k > 0: proper circles (k > 1, k = coth of the radius), horocycles
// (k = 1), and hypercycles / equidistant curves (k < 1, k = tanh of the
// distance to the base geodesic).
enum class CircleKind { Hypercycle, Horocycle, Circle };

// |k - 1| below this counts as a horocycle.
inline constexpr double kHorocycleTol = 1e-9;

// Within this distance of k = 1 the arc formulas switch to a series branch
// (the closed forms lose digits to cancellation as k -> 1).
inline constexpr double kSeriesBand = 1e-4;

// Convergence tolerance and iteration cap for the dual-curvature solve.
inline constexpr double kAngleTol = 1e-12;
inline constexpr int kMaxSolveIter = 200;

struct CircleClass {
  CircleKind kind = CircleKind::Horocycle;
  // arccoth(k) for circles, arctanh(k) for hypercycles, empty for horocycles.
  std::optional<double> radius;
};

CircleClass classify(double k);

// One polygonal face of the packing problem: n >= 3 circles with geodesic
// curvatures k[i] > 0 meeting around a common dual circle, plus the angle
// alpha = 2*pi - Y available at the dual center (Y is the cone-angle deficit
// carried by the face; alpha must lie in (0, n*pi)).
struct FaceConfig {
  std::vector<double> k;
  double alpha = 0;

  int size() const { return static_cast<int>(k.size()); }
  static FaceConfig from_deficit(std::vector<double> k, double Y);
};

// Angle subtended at the dual center by the chord where circle i crosses the
// dual circle of curvature k_f > 1. theta = 2*atan(sqrt(k_f^2 - 1) / k_i),
// valid for all three circle kinds, strictly in (0, pi).
double theta_dual(double k_f, double k_i);

// d theta / d k_f = 2 k_f k_i / (sqrt(k_f^2-1) (k_f^2 + k_i^2 - 1)), > 0.
double theta_dual_dkf(double k_f, double k_i);

// d theta / d k_i = -2 sqrt(k_f^2-1) / (k_f^2 + k_i^2 - 1), < 0.
double theta_dual_dki(double k_f, double k_i);

// The unique k_f in (1, inf) with sum_i theta_dual(k_f, k[i]) = alpha.
// Existence/uniqueness: each theta is strictly increasing in k_f from 0
// (k_f -> 1) to pi (k_f -> inf), so the sum sweeps (0, n*pi) exactly once.
// Bracketed Newton; throws std::runtime_error if it fails to converge.
// hint, when > 1, seeds the iteration (e.g. with the previous solve's root).
double solve_dual_curvature(const FaceConfig& cfg, double hint = 0);

// Angle of the sub-arc seen from circle i's own center: 2*atan(sqrt(k_i^2-1)/k_f)
// for circles, 2*atanh(sqrt(1-k_i^2)/k_f) for hypercycles (angle measured along
// the base geodesic). Undefined for horocycles (center at infinity): throws.
double phi_own(double k_f, double k_i);

// Total geodesic curvature L = k * length of the sub-arc of circle i cut out
// by the dual circle. One smooth function of (k_f, k_i) across all kinds:
//   L = 2 k_i * atan(x)/x * (1/k_f)   with x = sqrt(k_i^2-1)/k_f   (k_i > 1)
//   L = 2 k_i * atanh(x)/x * (1/k_f)  with x = sqrt(1-k_i^2)/k_f   (k_i < 1)
//   L = 2 / k_f                                                    (k_i = 1)
// Always in (0, pi).
double arc_curvature(double k_f, double k_i);

// d L / d k_f = -2 k_i / (k_f^2 + k_i^2 - 1), same expression for all kinds.
double arc_curvature_dkf(double k_f, double k_i);

// Partial d L / d k_i at fixed k_f.
double arc_curvature_dki(double k_f, double k_i);

// d (sum of all arc curvatures of the face) / d k_j at fixed alpha, i.e. with
// k_f responding to k_j. Collapses to a function of (k_f, k_j) only:
//   2 (k_j^2-1)^{-3/2} (sqrt(k_j^2-1)/k_f - atan(sqrt(k_j^2-1)/k_f))  (k_j > 1)
//   2 / (3 k_f^3)                                                     (k_j = 1)
//   2 (1-k_j^2)^{-3/2} (atanh(sqrt(1-k_j^2)/k_f) - sqrt(1-k_j^2)/k_f) (k_j < 1)
// Strictly positive.
double face_total_curvature_dkj(double k_f, double k_j);

// Fully solved face: dual curvature, both angle families, arc curvatures, and
// the enclosed hyperbolic area n*pi - alpha - sum(L) (Gauss-Bonnet).
struct FacePacking {
  double k_f = 0;
  std::vector<double> theta_dual;     // sums to alpha
  std::vector<double> phi_own;        // 0 for horocycles (continuous limit)
  std::vector<double> arc_curvature;  // each in (0, pi)
  double area = 0;
};

FacePacking face_solve(const FaceConfig& cfg, double hint = 0);

// Total derivatives of the arc curvatures with respect to the circle
// curvatures at fixed alpha (the dual curvature is eliminated through the
// angle-sum constraint):
//   dL[i]/dk[j] = (dL_i/dk_f)(dk_f/dk_j) + [i==j] dL_i/dk_i|_{k_f}
//   dk_f/dk_j   = -(dtheta_j/dk_j) / sum_m(dtheta_m/dk_f)
// dsum_dk re-derives the column sums from face_total_curvature_dkj as an
// independent closed form; the two agree to rounding.
struct FaceJacobian {
  FacePacking packing;
  Eigen::MatrixXd dL_dk;
  Eigen::VectorXd dkf_dk;
  Eigen::VectorXd dsum_dk;
};

FaceJacobian face_jacobian(const FaceConfig& cfg, double hint = 0);

// Poincare-disk realization of a solved face. The dual circle sits at the
// origin with Euclidean radius R_f = 1/(k_f + sqrt(k_f^2-1)); packing circle i
// is the unique Euclidean circle orthogonal to the dual circle through its two
// crossing points: center at distance R_f/cos(theta_i/2) along direction
// `angle` (the cumulative theta midline), Euclidean radius R_f*tan(theta_i/2).
// Exact for all three circle kinds (orthogonality encodes the right-angle
// crossing that defines theta; horocycles come out internally tangent to the
// unit circle, hypercycles cross it).
struct LayoutCircle {
  CircleKind kind = CircleKind::Circle;
  bool dual = false;
  double cx = 0;
  double cy = 0;
  double radius = 0;
  double angle = 0;  // direction of the center seen from the origin
  double theta = 0;  // dual-center angle; 2*pi for the dual circle itself
};

// First element is the dual circle, then the packing circles in face order.
std::vector<LayoutCircle> face_layout(const FaceConfig& cfg,
                                      const FacePacking& packing);

}  // namespace gcpack
