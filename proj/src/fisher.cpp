#include "dirsim/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dirsim/error.hpp"
#include "dirsim/numkern.hpp"

namespace dirsim {

namespace {

constexpr double kAlignTol = 1e-8;
constexpr double kMuNormTol = 1e-6;

bool detect_alignment(double kappa, const Eigen::VectorXd& mu0, const Eigen::MatrixXd& a) {
  const double lambda_mu = mu0.dot(a * mu0);
  if ((a * mu0 - lambda_mu * mu0).norm() > kAlignTol * (1.0 + max_abs(a))) return false;
  // Along the great circle from mu0 towards eigenvector v_j the log density is
  // kappa t - lambda_mu t^2 - lambda_j (1 - t^2); t = 1 is its maximum iff
  // kappa >= 2 (lambda_mu - lambda_j). The smallest remaining eigenvalue is binding.
  const Eigen::VectorXd evals = sym_eigen(a).eigenvalues;
  Eigen::Index skip = 0;
  for (Eigen::Index i = 1; i < evals.size(); ++i) {
    if (std::abs(evals(i) - lambda_mu) < std::abs(evals(skip) - lambda_mu)) skip = i;
  }
  double min_other = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (i != skip) min_other = std::min(min_other, evals(i));
  }
  return kappa >= 2.0 * (lambda_mu - min_other) - kAlignTol * (1.0 + max_abs(a));
}

}  // namespace

FisherBinghamParams make_fisher_bingham(double kappa, const Eigen::VectorXd& mu0,
                                        const Eigen::Ref<const Eigen::MatrixXd>& a_raw) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw ParameterError("kappa must be finite and non-negative");
  }
  const Eigen::Index q = mu0.size();
  if (q < 2) throw ParameterError("dimension q must be at least 2");
  if (a_raw.rows() != q || a_raw.cols() != q) {
    throw ParameterError("A must be q x q with q = length of mu0");
  }
  const double norm = mu0.norm();
  if (!(std::abs(norm - 1.0) <= kMuNormTol)) {
    throw ParameterError("mu0 must be a unit vector");
  }
  FisherBinghamParams fp;
  fp.kappa = kappa;
  fp.mu0 = mu0 / norm;
  fp.a = standardize(a_raw).a;
  fp.a1 = fp.a + 0.5 * kappa *
                     (Eigen::MatrixXd::Identity(q, q) - fp.mu0 * fp.mu0.transpose());
  fp.a1 = 0.5 * (fp.a1 + fp.a1.transpose());
  fp.aligned = detect_alignment(kappa, fp.mu0, fp.a);
  return fp;
}

FisherBinghamParams make_vmf(double kappa, const Eigen::VectorXd& mu0) {
  return make_fisher_bingham(kappa, mu0, Eigen::MatrixXd::Zero(mu0.size(), mu0.size()));
}

FbEnvelope fb_envelope(const FisherBinghamParams& fp) {
  FbEnvelope fe{standardize(fp.a1), 0.0};
  fe.log_shift = fp.kappa - fe.bingham.shift;
  return fe;
}

double fb_bingham_stage_log_ratio(const FisherBinghamParams& fp, const Eigen::VectorXd& x) {
  const double gap = 1.0 - x.dot(fp.mu0);
  return -0.5 * fp.kappa * gap * gap;
}

Envelope<Eigen::VectorXd> fisher_bingham_envelope(const FisherBinghamParams& fp,
                                                   const FbEnvelope& fe,
                                                   const EnvelopeBound& bound) {
  const BinghamParams& bp = fe.bingham;
  const double half_q = 0.5 * static_cast<double>(bp.q());
  const double kappa = fp.kappa;
  const double log_shift = fe.log_shift;
  const double bing_log_mstar = bound.log_mstar;
  const Eigen::VectorXd lambdas = bp.lambdas;
  const Eigen::VectorXd omega = (1.0 + 2.0 * lambdas.array() / bound.b0).matrix();
  const Eigen::VectorXd mu_y = bp.basis.transpose() * fp.mu0;
  const Eigen::MatrixXd a_y = bp.basis.transpose() * fp.a * bp.basis;

  // Proposals are the BACG proposals for A1.
  Envelope<Eigen::VectorXd> e = bingham_envelope(bp, bound);
  e.log_mstar = log_shift + bing_log_mstar;
  e.log_target = [kappa, mu_y, a_y](const Eigen::VectorXd& y) {
    return kappa * y.dot(mu_y) - y.dot(a_y * y);
  };
  e.staged_log_ratio = [=](const Eigen::VectorXd& y) {
    const Eigen::ArrayXd y2 = y.array().square();
    const double acg_stage =
        -(lambdas.array() * y2).sum() - bing_log_mstar + half_q * std::log((omega.array() * y2).sum());
    const double gap = 1.0 - y.dot(mu_y);
    return StagedLogRatio{acg_stage, -0.5 * kappa * gap * gap};
  };
  return e;
}

SampleBatch sample_fisher_bingham(const FisherBinghamParams& fp, RngStream& s, std::size_t n) {
  const FbEnvelope fe = fb_envelope(fp);
  const auto env = fisher_bingham_envelope(fp, fe, solve_b0(fe.bingham.lambdas));
  auto [ys, stats] = ar_sample(env, s, n);
  SampleBatch out{Eigen::MatrixXd(static_cast<Eigen::Index>(n), fp.q()), stats};
  for (std::size_t i = 0; i < n; ++i) {
    out.points.row(static_cast<Eigen::Index>(i)) = (fe.bingham.basis * ys[i]).transpose();
  }
  return out;
}

SampleBatch sample_vmf(double kappa, const Eigen::VectorXd& mu0, RngStream& s, std::size_t n) {
  return sample_fisher_bingham(make_vmf(kappa, mu0), s, n);
}

AcceptStats measure_fisher_bingham(const FisherBinghamParams& fp, RngStream& s,
                                   std::uint64_t trials) {
  const FbEnvelope fe = fb_envelope(fp);
  return ar_measure(fisher_bingham_envelope(fp, fe, solve_b0(fe.bingham.lambdas)), s, trials);
}

}  // namespace dirsim
