#include "dirsim/matrix_models.hpp"

#include <cmath>

#include "dirsim/error.hpp"

namespace dirsim {

namespace {

// Y^T Y below this relative conditioning is treated as a degenerate draw.
constexpr double kDegenerateTol = 1e-14;

// Y (Y^T Y)^{-1/2}, computed as the polar factor U V^T of the thin SVD of Y.
// Going through Y^T Y loses orthonormality as cond(Y)^2 * eps. Returns false
// for a degenerate draw.
bool orthonormalize(const Eigen::MatrixXd& y, Eigen::MatrixXd& x) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv.minCoeff() * sv.minCoeff() > kDegenerateTol * sv.maxCoeff() * sv.maxCoeff())) return false;
  x = svd.matrixU() * svd.matrixV().transpose();
  return true;
}

// Orthonormal frame from a q x r Gaussian matrix with column covariance root
// `root` (or identity). Degenerate draws are redrawn.
Eigen::MatrixXd gaussian_frame(Eigen::Index q, Eigen::Index r, RngStream& s,
                               const Eigen::MatrixXd* root) {
  Eigen::MatrixXd x;
  for (;;) {
    Eigen::MatrixXd y(q, r);
    for (Eigen::Index j = 0; j < r; ++j) {
      for (Eigen::Index i = 0; i < q; ++i) y(i, j) = s.next_normal();
    }
    if (root != nullptr) y = (*root) * y;
    if (orthonormalize(y, x)) return x;
  }
}

}  // namespace

Eigen::MatrixXd sample_uniform_sphere(Eigen::Index q, RngStream& s, std::size_t n) {
  if (q < 2) throw ParameterError("sphere dimension q must be at least 2");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), q);
  Eigen::VectorXd u(q);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    do {
      for (Eigen::Index j = 0; j < q; ++j) u(j) = s.next_normal();
      norm = u.norm();
    } while (norm == 0.0);
    out.row(static_cast<Eigen::Index>(i)) = (u / norm).transpose();
  }
  return out;
}

std::vector<Eigen::MatrixXd> sample_uniform_stiefel(Eigen::Index q, Eigen::Index r, RngStream& s,
                                                    std::size_t n) {
  if (r < 1 || r > q) throw ParameterError("Stiefel frame size must satisfy 1 <= r <= q");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(gaussian_frame(q, r, s, nullptr));
  }
  return out;
}

std::vector<Eigen::MatrixXd> sample_macg(const Eigen::Ref<const Eigen::MatrixXd>& omega,
                                         Eigen::Index r, RngStream& s, std::size_t n) {
  const Eigen::Index q = omega.rows();
  if (r < 1 || r > q - 1) throw ParameterError("MACG frame size must satisfy 1 <= r <= q-1");
  const AcgParams ap = make_acg(omega);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(gaussian_frame(q, r, s, &ap.chol_of_inverse));
  }
  return out;
}

double macg_log_density(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd g = x.transpose() * omega * x;
  return -0.5 * static_cast<double>(omega.rows()) * std::log(g.determinant());
}

MatrixBinghamParams make_matrix_bingham(const Eigen::Ref<const Eigen::MatrixXd>& a_raw,
                                        Eigen::Index r) {
  const Eigen::Index q = a_raw.rows();
  if (r == q) {
    throw ParameterError(
        "balanced matrix Bingham with r = q is uniform on O(q); use uniform-stiefel");
  }
  if (r < 1 || r > q - 1) throw ParameterError("frame size must satisfy 1 <= r <= q-1");
  MatrixBinghamParams mp;
  mp.bingham = standardize(a_raw);
  mp.r = r;
  mp.bound = solve_b0(mp.bingham.lambdas);
  return mp;
}

Envelope<Eigen::MatrixXd> matrix_bingham_envelope(const MatrixBinghamParams& mp) {
  const Eigen::Index q = mp.q();
  const Eigen::Index r = mp.r;
  const double half_q = 0.5 * static_cast<double>(q);
  const Eigen::VectorXd lambdas = mp.bingham.lambdas;
  const Eigen::VectorXd omega = (1.0 + 2.0 * lambdas.array() / mp.bound.b0).matrix();
  const Eigen::MatrixXd root = omega.array().rsqrt().matrix().asDiagonal();

  Envelope<Eigen::MatrixXd> e;
  e.log_mstar = static_cast<double>(r) * mp.bound.log_mstar;
  e.propose = [q, r, root](RngStream& s) {
    return gaussian_frame(q, r, s, &root);
  };
  // -tr(X^T Lambda X)
  e.log_target = [lambdas](const Eigen::MatrixXd& x) {
    return -(x.array().square().colwise() * lambdas.array()).sum();
  };
  // -(q/2) log |X^T Omega X|
  e.log_envelope = [omega, half_q](const Eigen::MatrixXd& x) {
    const Eigen::MatrixXd g = x.transpose() * omega.asDiagonal() * x;
    return -half_q * 2.0 * g.llt().matrixLLT().diagonal().array().log().sum();
  };
  return e;
}

FrameBatch sample_matrix_bingham_balanced(const MatrixBinghamParams& mp, RngStream& s,
                                          std::size_t n) {
  auto [xs, stats] = ar_sample(matrix_bingham_envelope(mp), s, n);
  FrameBatch out{std::move(xs), stats};
  for (auto& x : out.frames) x = mp.bingham.basis * x;
  return out;
}

AcceptStats measure_matrix_bingham(const MatrixBinghamParams& mp, RngStream& s,
                                   std::uint64_t trials) {
  return ar_measure(matrix_bingham_envelope(mp), s, trials);
}

Quaternion::Quaternion(const Eigen::Vector4d& x) {
  const double norm = x.norm();
  if (!(std::abs(norm - 1.0) <= 1e-6)) throw ParameterError("quaternion must have unit norm");
  x_ = x / norm;
}

Eigen::Matrix3d quat_to_rotation(const Quaternion& q) { return quat_to_rotation(q.coeffs()); }

Eigen::Matrix3d quat_to_rotation(const Eigen::Vector4d& x) {
  const double x1 = x(0), x2 = x(1), x3 = x(2), x4 = x(3);
  Eigen::Matrix3d m;
  m << x1 * x1 + x2 * x2 - x3 * x3 - x4 * x4, -2.0 * (x1 * x4 - x2 * x3), 2.0 * (x1 * x3 + x2 * x4),
      2.0 * (x1 * x4 + x2 * x3), x1 * x1 + x3 * x3 - x2 * x2 - x4 * x4, -2.0 * (x1 * x2 - x3 * x4),
      -2.0 * (x1 * x3 - x2 * x4), 2.0 * (x1 * x2 + x3 * x4), x1 * x1 + x4 * x4 - x2 * x2 - x3 * x3;
  return m;
}

MatrixFisherParams3 mf_so3_params(const Eigen::Matrix3d& f) {
  MatrixFisherParams3 mf;
  mf.f = f;
  mf.svd = signed_svd3(f);
  const Eigen::Vector3d& d = mf.svd.delta;
  mf.lambda4 << 0.0, 2.0 * (d(1) + d(2)), 2.0 * (d(0) + d(2)), 2.0 * (d(0) + d(1));
  // Round-off can make a mathematically zero gap slightly negative.
  for (int i = 1; i < 4; ++i) mf.lambda4(i) = std::max(mf.lambda4(i), mf.lambda4(i - 1));
  return mf;
}

RotationBatch sample_matrix_fisher_so3(const MatrixFisherParams3& mf, RngStream& s,
                                       std::size_t n) {
  const BinghamParams bp = BinghamParams::from_diagonal(mf.lambda4);
  SampleBatch quats = sample_bingham(bp, s, n);
  RotationBatch out;
  out.stats = quats.stats;
  out.rotations.reserve(n);
  out.quaternions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector4d x = quats.points.row(static_cast<Eigen::Index>(i)).transpose();
    out.quaternions.push_back(x);
    out.rotations.push_back(mf.svd.u * quat_to_rotation(x) * mf.svd.v.transpose());
  }
  return out;
}

}  // namespace dirsim
