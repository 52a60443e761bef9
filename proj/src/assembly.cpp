#include "gcpack/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gcpack {

namespace {

void require_state(const CellComplex& complex, const PackingState& state) {
  if (!complex.valid())
    throw std::invalid_argument("complex has unresolved violations");
  if (state.s.size() != complex.vertex_count())
    throw std::invalid_argument("state has " + std::to_string(state.s.size()) +
                                " entries for " +
                                std::to_string(complex.vertex_count()) +
                                " vertices");
  if (!state.s.allFinite())
    throw std::domain_error("state contains non-finite entries");
}

double hint_for(const FaceHints* hints, int f) {
  if (hints && f < static_cast<int>(hints->k_f.size())) return hints->k_f[f];
  return 0;
}

void store_hint(FaceHints* hints, const CellComplex& complex, int f,
                double k_f) {
  if (!hints) return;
  if (hints->k_f.size() != static_cast<size_t>(complex.face_count()))
    hints->k_f.assign(complex.face_count(), 0);
  hints->k_f[f] = k_f;
}

FaceConfig face_config(const CellComplex& complex, const Eigen::VectorXd& k,
                       int f) {
  FaceConfig cfg;
  const auto& verts = complex.face_vertices(f);
  cfg.k.reserve(verts.size());
  for (int v : verts) cfg.k.push_back(k[v]);
  cfg.alpha = complex.face_alpha(f);
  return cfg;
}

}  // namespace

PackingState PackingState::zero(int n) {
  PackingState st;
  st.s = Eigen::VectorXd::Zero(n);
  return st;
}

PackingState PackingState::from_curvatures(const Eigen::VectorXd& k) {
  for (Eigen::Index i = 0; i < k.size(); ++i)
    if (!(std::isfinite(k[i]) && k[i] > 0))
      throw std::domain_error("curvature " + std::to_string(i) +
                              " must be finite and > 0");
  PackingState st;
  st.s = k.array().log();
  return st;
}

CurvatureReport curvatures(const CellComplex& complex,
                           const PackingState& state, FaceHints* hints) {
  require_state(complex, state);
  const Eigen::VectorXd k = state.k();
  CurvatureReport rep;
  rep.L = Eigen::VectorXd::Zero(complex.vertex_count());
  rep.faces.reserve(complex.face_count());
  for (int f = 0; f < complex.face_count(); ++f) {
    FacePacking pk = face_solve(face_config(complex, k, f), hint_for(hints, f));
    store_hint(hints, complex, f, pk.k_f);
    const auto& verts = complex.face_vertices(f);
    for (size_t i = 0; i < verts.size(); ++i)
      rep.L[verts[i]] += pk.arc_curvature[i];
    rep.faces.push_back(std::move(pk));
  }
  return rep;
}

CurvatureReport full_report(const CellComplex& complex,
                            const PackingState& state, FaceHints* hints) {
  require_state(complex, state);
  const Eigen::VectorXd k = state.k();
  const int n = complex.vertex_count();

  CurvatureReport rep;
  rep.L = Eigen::VectorXd::Zero(n);
  rep.M = Eigen::MatrixXd::Zero(n, n);
  rep.K = Eigen::VectorXd::Zero(n);
  rep.faces.reserve(complex.face_count());

  for (int f = 0; f < complex.face_count(); ++f) {
    FaceJacobian J =
        face_jacobian(face_config(complex, k, f), hint_for(hints, f));
    store_hint(hints, complex, f, J.packing.k_f);
    const auto& verts = complex.face_vertices(f);
    const int m = static_cast<int>(verts.size());
    for (int i = 0; i < m; ++i) {
      rep.L[verts[i]] += J.packing.arc_curvature[i];
      rep.K[verts[i]] += k[verts[i]] * J.dsum_dk[i];
      for (int j = 0; j < m; ++j)
        rep.M(verts[i], verts[j]) += k[verts[j]] * J.dL_dk(i, j);
    }
    rep.faces.push_back(std::move(J.packing));
  }

  const double asym = (rep.M - rep.M.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8)
    throw std::runtime_error("curvature jacobian asymmetry " +
                             std::to_string(asym) + " exceeds guard");
  rep.M = (0.5 * (rep.M + rep.M.transpose())).eval();

  rep.A = -rep.M;
  rep.A.diagonal().setZero();
  return rep;
}

Eigen::MatrixXd jacobian(const CellComplex& complex,
                         const PackingState& state) {
  return full_report(complex, state).M;
}

Weights weights(const CellComplex& complex, const PackingState& state) {
  CurvatureReport rep = full_report(complex, state);
  return {std::move(rep.A), std::move(rep.K)};
}

Eigen::VectorXd p_laplacian(const Eigen::MatrixXd& A, const Eigen::VectorXd& g,
                            double p) {
  if (!(std::isfinite(p) && p > 1))
    throw std::domain_error("p-Laplacian needs p > 1, got " +
                            std::to_string(p));
  if (A.rows() != A.cols() || A.rows() != g.size())
    throw std::invalid_argument("weight matrix / vector size mismatch");
  const Eigen::Index n = g.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = g[j] - g[i];
      if (d == 0) continue;
      acc += A(i, j) * std::copysign(std::pow(std::abs(d), p - 1.0), d);
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace gcpack
