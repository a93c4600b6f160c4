#include "quadsim/ekf.hpp"

#include <Eigen/Dense>

#include "quadsim/dynamics.hpp"
#include "quadsim/errors.hpp"
#include "quadsim/linearize.hpp"

namespace quadsim {

namespace {

Mat12 symmetrize(const Mat12& M) { return 0.5 * (M + M.transpose()); }

}  // namespace

EkfBelief ekf_predict(const EkfBelief& b, const ControlInput& u,
                      const QuadParams& p, double ts,
                      const NoiseConfig& noise, EkfMode mode) {
  if (!(ts > 0.0)) {
    throw OutOfRange("ekf_predict: ts must be positive");
  }
  if (noise.q_scalar < 0.0) {
    throw OutOfRange("ekf_predict: q_scalar must be non-negative");
  }
  if (!b.xhat.allFinite() || !b.P.allFinite() || !u.finite()) {
    throw NonFiniteError("ekf_predict: non-finite belief or input");
  }
  const QuadState sh = QuadState::from_vector(b.xhat);
  const Mat12 A = jacobian_A(sh, p);
  const Mat12 Q = noise.q_scalar * Mat12::Identity();
  EkfBelief out;
  if (mode == EkfMode::kStandard) {
    out.xhat = rk4_step(sh, u, p, ts).to_vector();
    const Mat12 F = Mat12::Identity() + A * ts;
    out.P = symmetrize(F * b.P * F.transpose() + Q);
  } else {
    const Mat12x4 B = jacobian_B(sh, p);
    out.xhat = b.xhat + (A * b.xhat + B * u.to_vector()) * ts;
    out.P = symmetrize(A * b.P * A.transpose() + Q);
  }
  if (!out.xhat.allFinite() || !out.P.allFinite()) {
    throw NonFiniteError("ekf_predict: propagation diverged");
  }
  return out;
}

EkfBelief ekf_update(const EkfBelief& prior, const Vec12& y,
                     const NoiseConfig& noise) {
  if (noise.r_scalar < 0.0) {
    throw OutOfRange("ekf_update: r_scalar must be non-negative");
  }
  if (!prior.xhat.allFinite() || !prior.P.allFinite() || !y.allFinite()) {
    throw NonFiniteError("ekf_update: non-finite belief or measurement");
  }
  const Mat12 S = symmetrize(prior.P + noise.r_scalar * Mat12::Identity());
  Eigen::SelfAdjointEigenSolver<Mat12> es(S, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > 0.0) || !(lmax / lmin <= 1e12)) {
    throw SingularInnovation(
        "ekf_update: innovation covariance not safely invertible");
  }
  // K = P S^-1; both are symmetric, so K = (S^-1 P)'.
  const Mat12 K = S.ldlt().solve(prior.P).transpose();
  EkfBelief post;
  post.xhat = prior.xhat + K * (y - prior.xhat);
  post.P = symmetrize((Mat12::Identity() - K) * prior.P);
  if (!post.xhat.allFinite() || !post.P.allFinite()) {
    throw NonFiniteError("ekf_update: non-finite posterior");
  }
  return post;
}

EkfBelief ekf_step(const EkfBelief& b, const ControlInput& u_prev,
                   const Vec12& y, const QuadParams& p, double ts,
                   const NoiseConfig& noise, EkfMode mode) {
  return ekf_update(ekf_predict(b, u_prev, p, ts, noise, mode), y, noise);
}

}  // namespace quadsim
