#include "dirsim/bingham.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dirsim/error.hpp"
#include "dirsim/numkern.hpp"

namespace dirsim {

namespace {

constexpr double kBracketLow = 1e-12;
constexpr double kResidualTol = 1e-10;
constexpr int kMaxIterations = 200;

}  // namespace

BinghamParams BinghamParams::from_eigen(const Eigen::MatrixXd& basis,
                                        const Eigen::VectorXd& lambdas) {
  const Eigen::Index q = lambdas.size();
  if (q < 2) throw ParameterError("Bingham dimension q must be at least 2");
  if (basis.rows() != q || basis.cols() != q) {
    throw ParameterError("eigenbasis shape does not match eigenvalue count");
  }
  if (lambdas(0) != 0.0) throw ParameterError("smallest eigenvalue must be exactly 0");
  for (Eigen::Index i = 1; i < q; ++i) {
    if (!(lambdas(i) >= lambdas(i - 1)) || !std::isfinite(lambdas(i))) {
      throw ParameterError("eigenvalues must be finite and nondecreasing");
    }
  }
  BinghamParams bp;
  bp.lambdas = lambdas;
  bp.basis = basis;
  bp.a = basis * lambdas.asDiagonal() * basis.transpose();
  return bp;
}

BinghamParams BinghamParams::from_diagonal(const Eigen::VectorXd& lambdas) {
  return from_eigen(Eigen::MatrixXd::Identity(lambdas.size(), lambdas.size()), lambdas);
}

BinghamParams standardize(const Eigen::Ref<const Eigen::MatrixXd>& a_raw) {
  if (a_raw.rows() < 2) throw ParameterError("Bingham dimension q must be at least 2");
  const SymEigen eig = sym_eigen(a_raw);
  const double lmin = eig.eigenvalues(0);
  Eigen::VectorXd lambdas = eig.eigenvalues.array() - lmin;
  lambdas(0) = 0.0;
  for (Eigen::Index i = 1; i < lambdas.size(); ++i) {
    lambdas(i) = std::max(lambdas(i), lambdas(i - 1));
  }
  BinghamParams bp = BinghamParams::from_eigen(eig.eigenvectors, lambdas);
  bp.shift = lmin;
  return bp;
}

double bacg_log_mstar(double q, double b) { return -(q - b) / 2.0 + (q / 2.0) * std::log(q / b); }

double bacg_log_bound(const Eigen::VectorXd& lambdas, double b) {
  double log_det = 0.0;
  for (double l : lambdas) log_det += std::log1p(2.0 * l / b);
  return bacg_log_mstar(static_cast<double>(lambdas.size()), b) - 0.5 * log_det;
}

double b0_residual(const Eigen::VectorXd& lambdas, double b) {
  double sum = 0.0;
  for (double l : lambdas) sum += 1.0 / (b + 2.0 * l);
  return sum - 1.0;
}

EnvelopeBound solve_b0(const Eigen::VectorXd& lambdas) {
  const double q = static_cast<double>(lambdas.size());
  // h(b) = sum 1/(b + 2 l) - 1 is decreasing; h(0+) = +inf since lambda_1 = 0,
  // and h(q) <= 0.
  double lo = kBracketLow;
  double hi = q;
  double b = q;
  double h = b0_residual(lambdas, b);
  for (int it = 0; it < kMaxIterations && std::abs(h) > kResidualTol; ++it) {
    if (h > 0.0) {
      lo = b;
    } else {
      hi = b;
    }
    double slope = 0.0;
    for (double l : lambdas) slope -= 1.0 / ((b + 2.0 * l) * (b + 2.0 * l));
    double next = b - h / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    b = next;
    h = b0_residual(lambdas, b);
  }
  if (std::abs(h) > kResidualTol) {
    throw ConvergenceFailure("b0 root finder did not reach residual 1e-10");
  }
  return EnvelopeBound{b, bacg_log_mstar(q, b), (q - b) / 2.0};
}

AcgParams make_acg(const Eigen::Ref<const Eigen::MatrixXd>& omega) {
  AcgParams ap;
  ap.omega = 0.5 * (omega + omega.transpose());
  const Eigen::MatrixXd l = chol_lower(omega);
  ap.log_det_omega = 2.0 * l.diagonal().array().log().sum();
  // Omega^{-1} = L^{-T} L^{-1}; factor it again for a lower-triangular root.
  const Eigen::MatrixXd l_inv =
      l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(l.rows(), l.cols()));
  ap.chol_of_inverse = chol_lower(l_inv.transpose() * l_inv);
  return ap;
}

AcgParams acg_from_bingham(const BinghamParams& bp, double b) {
  if (!(b > 0.0)) throw ParameterError("ACG tuning constant b must be positive");
  const Eigen::Index q = bp.q();
  return make_acg(Eigen::MatrixXd::Identity(q, q) + (2.0 / b) * bp.a);
}

Eigen::MatrixXd sample_acg(const AcgParams& ap, RngStream& s, std::size_t n) {
  const Eigen::Index q = ap.omega.rows();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), q);
  Eigen::VectorXd z(q);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd y;
    double norm = 0.0;
    do {
      for (Eigen::Index j = 0; j < q; ++j) z(j) = s.next_normal();
      y = ap.chol_of_inverse * z;
      norm = y.norm();
    } while (norm == 0.0);
    out.row(static_cast<Eigen::Index>(i)) = (y / norm).transpose();
  }
  return out;
}

Envelope<Eigen::VectorXd> bingham_envelope(const BinghamParams& bp, const EnvelopeBound& bound) {
  const Eigen::Index q = bp.q();
  const double half_q = 0.5 * static_cast<double>(q);
  const Eigen::VectorXd lambdas = bp.lambdas;
  const Eigen::VectorXd omega = (1.0 + 2.0 * lambdas.array() / bound.b0).matrix();
  const Eigen::VectorXd scale = omega.array().rsqrt().matrix();

  Envelope<Eigen::VectorXd> e;
  e.log_mstar = bound.log_mstar;
  e.propose = [q, scale](RngStream& s) {
    Eigen::VectorXd y(q);
    double norm2 = 0.0;
    do {
      for (Eigen::Index j = 0; j < q; ++j) y(j) = s.next_normal() * scale(j);
      norm2 = y.squaredNorm();
    } while (norm2 == 0.0);
    return Eigen::VectorXd(y / std::sqrt(norm2));
  };
  e.log_target = [lambdas](const Eigen::VectorXd& y) {
    return -(lambdas.array() * y.array().square()).sum();
  };
  e.log_envelope = [omega, half_q](const Eigen::VectorXd& y) {
    return -half_q * std::log((omega.array() * y.array().square()).sum());
  };
  return e;
}

SampleBatch sample_bingham(const BinghamParams& bp, RngStream& s, std::size_t n) {
  const auto env = bingham_envelope(bp, solve_b0(bp.lambdas));
  auto [ys, stats] = ar_sample(env, s, n);
  SampleBatch out{Eigen::MatrixXd(static_cast<Eigen::Index>(n), bp.q()), stats};
  for (std::size_t i = 0; i < n; ++i) {
    out.points.row(static_cast<Eigen::Index>(i)) = (bp.basis * ys[i]).transpose();
  }
  return out;
}

AcceptStats measure_bingham(const BinghamParams& bp, RngStream& s, std::uint64_t trials) {
  return ar_measure(bingham_envelope(bp, solve_b0(bp.lambdas)), s, trials);
}

double normal_cauchy_bound(int p) {
  if (p < 1) throw ParameterError("dimension p must be at least 1");
  const double q = p + 1.0;
  const double log_m = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e) +
                       (q / 2.0) * std::log(q / (2.0 * std::numbers::e)) - std::lgamma(q / 2.0);
  return std::exp(log_m);
}

double predicted_efficiency(const BinghamParams& bp, double cbing) {
  if (!(cbing > 0.0)) throw ParameterError("normalizing constant must be positive");
  const EnvelopeBound bound = solve_b0(bp.lambdas);
  return std::exp(-(std::log(cbing) + bacg_log_bound(bp.lambdas, bound.b0)));
}

}  // namespace dirsim
