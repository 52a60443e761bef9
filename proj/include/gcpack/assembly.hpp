#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gcpack/cell_complex.hpp"
#include "gcpack/face_kernel.hpp"

namespace gcpack {

// Packing variables in log coordinates: s[i] = log k[i], so every real vector
// is a legal state and derivatives in s absorb a factor k.
struct PackingState {
  Eigen::VectorXd s;

  Eigen::VectorXd k() const { return s.array().exp(); }
  static PackingState zero(int n);
  // From curvatures k > 0 (throws std::domain_error otherwise).
  static PackingState from_curvatures(const Eigen::VectorXd& k);
};

// Warm-start cache for the per-face dual-curvature solves, indexed like the
// complex's faces. Pass the same object across repeated evaluations at nearby
// states to seed each face's root find with its previous root.
struct FaceHints {
  std::vector<double> k_f;
};

// Everything the flows and diagnostics need at one state.
//
//   L      per-vertex total geodesic curvature, L[i] = sum over incident
//          faces of that face's arc curvature at i
//   faces  the solved faces, complex face order
//   M      d L / d s (log coordinates): M(i,j) = sum over shared faces of
//          k_j * dL_i/dk_j. Symmetric positive definite with positive
//          diagonal, nonpositive off-diagonal, strictly diagonally dominant;
//          symmetrized after an asymmetry guard of 1e-8.
//   A      flow weights: A(i,j) = -M(i,j) >= 0 for i != j, zero diagonal
//   K      self weights from the closed-form face total-curvature derivative;
//          equals the column sums of M up to rounding
//
// curvatures() fills only L and faces; full_report() fills everything.
struct CurvatureReport {
  Eigen::VectorXd L;
  std::vector<FacePacking> faces;
  Eigen::MatrixXd M;
  Eigen::MatrixXd A;
  Eigen::VectorXd K;
};

CurvatureReport curvatures(const CellComplex& complex, const PackingState& state,
                           FaceHints* hints = nullptr);
CurvatureReport full_report(const CellComplex& complex, const PackingState& state,
                            FaceHints* hints = nullptr);

Eigen::MatrixXd jacobian(const CellComplex& complex, const PackingState& state);

struct Weights {
  Eigen::MatrixXd A;
  Eigen::VectorXd K;
};
Weights weights(const CellComplex& complex, const PackingState& state);

// Discrete p-Laplacian of g under weights A (p > 1):
//   (D_p g)[i] = sum_j A(i,j) * sign(g[j]-g[i]) * |g[j]-g[i]|^(p-1)
// with the convention 0^(p-1) = 0.
Eigen::VectorXd p_laplacian(const Eigen::MatrixXd& A, const Eigen::VectorXd& g,
                            double p);

}  // namespace gcpack
