#pragma once

// Bingham sampling on the sphere S_{q-1} with an angular central Gaussian
// (ACG) envelope. Densities are written w.r.t. the uniform measure:
//   Bingham:  f*(x) = exp(-x^T A x)
//   ACG:      g*(x) = (x^T Omega x)^{-q/2},  c_ACG = |Omega|^{1/2}
// With Omega(b) = I + 2A/b the envelope bound is
//   f*(x) <= exp(-(q-b)/2) (q/b)^{q/2} g*(x),
// and b is tuned by solving sum_i 1/(b + 2 lambda_i) = 1.

#include <Eigen/Dense>

#include "dirsim/ar.hpp"
#include "dirsim/rng.hpp"

namespace dirsim {

/// Bingham concentration matrix with its eigenvalues shifted so that the
/// smallest is exactly zero: a = basis * diag(lambdas) * basis^T.
struct BinghamParams {
  Eigen::MatrixXd a;
  Eigen::VectorXd lambdas;  // 0 = lambdas(0) <= ... <= lambdas(q-1)
  Eigen::MatrixXd basis;
  double shift = 0.0;  // constant removed from the raw matrix

  Eigen::Index q() const { return lambdas.size(); }

  /// Build from an eigenbasis and nondecreasing eigenvalues with lambdas(0) == 0.
  static BinghamParams from_eigen(const Eigen::MatrixXd& basis, const Eigen::VectorXd& lambdas);
  static BinghamParams from_diagonal(const Eigen::VectorXd& lambdas);
};

struct AcgParams {
  Eigen::MatrixXd omega;
  Eigen::MatrixXd chol_of_inverse;  // L with L L^T = Omega^{-1}
  double log_det_omega = 0.0;       // log c_ACG = log_det_omega / 2
};

struct EnvelopeBound {
  double b0 = 0.0;
  double log_mstar = 0.0;  // -(q-b0)/2 + (q/2) log(q/b0)
  double u0 = 0.0;         // (q-b0)/2, tangency point of the log-concavity bound
};

/// Unit vectors one per row plus acceptance statistics.
struct SampleBatch {
  Eigen::MatrixXd points;
  AcceptStats stats;
};

BinghamParams standardize(const Eigen::Ref<const Eigen::MatrixXd>& a_raw);

/// log M*(b) = -(q-b)/2 + (q/2) log(q/b).
double bacg_log_mstar(double q, double b);

/// b-dependent part of log M(b): log M*(b) - (1/2) sum_i log(1 + 2 lambda_i / b).
double bacg_log_bound(const Eigen::VectorXd& lambdas, double b);

/// Optimal tuning constant from sum_i 1/(b + 2 lambda_i) = 1 on (1e-12, q].
/// Safeguarded Newton inside a shrinking bisection bracket.
EnvelopeBound solve_b0(const Eigen::VectorXd& lambdas);

/// Residual sum_i 1/(b + 2 lambda_i) - 1.
double b0_residual(const Eigen::VectorXd& lambdas, double b);

AcgParams make_acg(const Eigen::Ref<const Eigen::MatrixXd>& omega);

/// Omega(b) = I + 2A/b.
AcgParams acg_from_bingham(const BinghamParams& bp, double b);

/// x = y/|y| with y ~ N(0, Omega^{-1}); one unit vector per row.
Eigen::MatrixXd sample_acg(const AcgParams& ap, RngStream& s, std::size_t n);

/// BACG envelope in the eigenbasis of A: proposals and evaluation use
/// coordinates y = basis^T x, where A is diagonal.
Envelope<Eigen::VectorXd> bingham_envelope(const BinghamParams& bp, const EnvelopeBound& bound);

SampleBatch sample_bingham(const BinghamParams& bp, RngStream& s, std::size_t n);

/// Runs exactly `trials` BACG proposals (no samples kept).
AcceptStats measure_bingham(const BinghamParams& bp, RngStream& s, std::uint64_t trials);

/// Optimal bound M = sqrt(2 pi e) (q/2e)^{q/2} / Gamma(q/2), q = p + 1, for the
/// multivariate normal target under a multivariate Cauchy envelope.
double normal_cauchy_bound(int p);

/// 1/M(b0) given the Bingham normalizing constant (w.r.t. uniform measure).
double predicted_efficiency(const BinghamParams& bp, double cbing);

}  // namespace dirsim
