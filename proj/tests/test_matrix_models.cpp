#include <doctest.h>

#include <cmath>
#include <vector>

#include "dirsim/error.hpp"
#include "dirsim/matrix_models.hpp"
#include "dirsim/oracle.hpp"
#include "test_helpers.hpp"

using namespace dirsim;
using test::diag;
using test::vec;

namespace {

constexpr double kKs1pct = 1.63;

double ks_uniform(std::vector<double> v, double lo, double hi) {
  const double n = static_cast<double>(v.size());
  return std::sqrt(n) *
         oracle::ks_statistic(std::move(v), [lo, hi](double t) { return (t - lo) / (hi - lo); });
}

double orth_error(const Eigen::MatrixXd& x) {
  return (x.transpose() * x - Eigen::MatrixXd::Identity(x.cols(), x.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("uniform sphere") {
  RngStream s(51);
  const Eigen::MatrixXd c = sample_uniform_sphere(2, s, 100000);
  std::vector<double> ang;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    REQUIRE(std::abs(c.row(i).norm() - 1) < 1e-12);
    ang.push_back(std::atan2(c(i, 1), c(i, 0)));
  }
  CHECK(ks_uniform(ang, -M_PI, M_PI) < kKs1pct);

  const Eigen::MatrixXd x = sample_uniform_sphere(3, s, 100000);
  std::vector<double> z(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) z[i] = x(i, 2);
  CHECK(ks_uniform(z, -1, 1) < kKs1pct);

  const Eigen::MatrixXd w = sample_uniform_sphere(5, s, 100000);
  const double sigma = std::sqrt(1.0 / 5 / 100000);
  CHECK(w.colwise().mean().cwiseAbs().maxCoeff() < 3.5 * sigma);
}

TEST_CASE("uniform Stiefel") {
  RngStream s(52);
  RngStream s1(53), s2(53);
  const auto one = sample_uniform_stiefel(4, 1, s1, 50);
  const Eigen::MatrixXd sph = sample_uniform_sphere(4, s2, 50);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK((one[i].col(0).transpose() - sph.row(static_cast<Eigen::Index>(i))).cwiseAbs().maxCoeff() < 1e-12);
  }

  for (const auto& x : sample_uniform_stiefel(4, 4, s, 1000)) {
    REQUIRE(orth_error(x) <= 1e-10);
    REQUIRE(std::abs(std::abs(x.determinant()) - 1.0) <= 1e-10);
  }

  const Eigen::MatrixXd rot = test::random_rotation(s, 3);
  std::vector<double> z, zr;
  for (const auto& x : sample_uniform_stiefel(3, 2, s, 100000)) {
    REQUIRE(orth_error(x) <= 1e-10);
    z.push_back(x(2, 0));
    zr.push_back((rot * x)(2, 1));
  }
  CHECK(ks_uniform(z, -1, 1) < kKs1pct);
  CHECK(ks_uniform(zr, -1, 1) < kKs1pct);
}

TEST_CASE("matrix ACG") {
  RngStream s(54);
  std::vector<double> z;
  for (const auto& x : sample_macg(Eigen::MatrixXd::Identity(3, 3), 2, s, 100000)) z.push_back(x(2, 0));
  CHECK(ks_uniform(z, -1, 1) < kKs1pct);

  const Eigen::MatrixXd om = diag({1, 4, 9});
  RngStream a(55), b(55);
  const auto frames = sample_macg(om, 1, a, 100);
  const Eigen::MatrixXd vecs = sample_acg(make_acg(om), b, 100);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    CHECK((frames[i].col(0).transpose() - vecs.row(static_cast<Eigen::Index>(i))).cwiseAbs().maxCoeff() < 1e-12);
  }

  const Eigen::MatrixXd spd = test::random_spd(s, 5);
  for (const auto& x : sample_macg(spd, 3, s, 200)) {
    REQUIRE(orth_error(x) <= 1e-10);
    const Eigen::MatrixXd r = test::random_rotation(s, 3);
    CHECK(std::abs(macg_log_density(spd, x) - macg_log_density(spd, x * r)) < 1e-10);
  }

  CHECK_THROWS_AS(sample_macg(om, 3, s, 1), ParameterError);
}

TEST_CASE("determinant identity on frames") {
  RngStream s(56);
  for (int t = 0; t < 200; ++t) {
    const Eigen::MatrixXd a = test::random_spd(s, 5);
    const double b = 0.2 + 4.0 * s.next_uniform();
    const Eigen::MatrixXd om = Eigen::MatrixXd::Identity(5, 5) + 2.0 * a / b;
    const Eigen::MatrixXd x = sample_uniform_stiefel(5, 2, s, 1)[0];
    const Eigen::VectorXd u = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(x.transpose() * a * x).eigenvalues();
    const double lhs = (x.transpose() * om * x).determinant();
    const double rhs = (1.0 + 2.0 * u.array() / b).prod();
    CHECK(std::abs(lhs / rhs - 1.0) < 1e-9);
  }
}

TEST_CASE("balanced matrix Bingham") {
  RngStream s(57);
  SUBCASE("A = 0 is accepted every time") {
    for (int r : {1, 2, 3}) {
      const AcceptStats st = measure_matrix_bingham(make_matrix_bingham(Eigen::MatrixXd::Zero(4, 4), r), s, 10000);
      CHECK(st.accepts == st.trials);
    }
  }
  SUBCASE("r = 1 matches the vector sampler") {
    const Eigen::MatrixXd a = diag({0, 3, 9});
    RngStream a1(58), a2(58);
    const AcceptStats m = measure_matrix_bingham(make_matrix_bingham(a, 1), a1, 200000);
    const AcceptStats v = measure_bingham(standardize(a), a2, 200000);
    CHECK(m.accepts == v.accepts);
  }
  SUBCASE("efficiency declines with r") {
    const Eigen::MatrixXd a = diag({0, 0, 5, 5});
    const double e1 = measure_matrix_bingham(make_matrix_bingham(a, 1), s, 200000).efficiency();
    const double e2 = measure_matrix_bingham(make_matrix_bingham(a, 2), s, 200000).efficiency();
    CHECK(e2 <= e1);
  }
  SUBCASE("outputs are orthonormal frames") {
    const FrameBatch fb = sample_matrix_bingham_balanced(make_matrix_bingham(test::random_spd(s, 5), 2), s, 2000);
    CHECK(fb.frames.size() == 2000);
    for (const auto& x : fb.frames) REQUIRE(orth_error(x) <= 1e-10);
  }
  SUBCASE("shared b0") {
    const Eigen::VectorXd lam = vec({0, 1, 4, 9});
    const MatrixBinghamParams mp = make_matrix_bingham(lam.asDiagonal().toDenseMatrix(), 2);
    CHECK(mp.bound.b0 == solve_b0(mp.bingham.lambdas).b0);
    CHECK(std::abs(matrix_bingham_envelope(mp).log_mstar - 2 * mp.bound.log_mstar) < 1e-14);
    CHECK_FALSE(mp.complement_recommended());
    CHECK(make_matrix_bingham(lam.asDiagonal().toDenseMatrix(), 3).complement_recommended());
  }
  SUBCASE("r = q is rejected") {
    CHECK_THROWS_AS(make_matrix_bingham(diag({0, 1, 2}), 3), ParameterError);
    CHECK_THROWS_AS(make_matrix_bingham(diag({0, 1, 2}), 0), ParameterError);
  }
}

TEST_CASE("matrix Bingham bound over the parameter grid") {
  RngStream s(59);
  double worst = -1e300;
  for (int q : {3, 4, 6}) {
    for (int r : {1, 2, 3}) {
      if (r >= q) continue;
      for (double scale : {0.0, 1.0, 10.0, 100.0}) {
        Eigen::VectorXd lam(q);
        for (int i = 0; i < q; ++i) lam(i) = scale * i * i / ((q - 1.0) * (q - 1.0));
        const Eigen::MatrixXd rot = test::random_rotation(s, q);
        const MatrixBinghamParams mp = make_matrix_bingham(rot * lam.asDiagonal() * rot.transpose(), r);
        const auto env = matrix_bingham_envelope(mp);
        for (int i = 0; i < 20000; ++i) {
          const Eigen::MatrixXd x = env.propose(s);
          worst = std::max(worst, env.log_target(x) - env.log_envelope(x) - env.log_mstar);
        }
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Grassmann complement density identity") {
  RngStream s(60);
  const Eigen::MatrixXd a = test::random_spd(s, 4);
  const MatrixBinghamParams mp = make_matrix_bingham(a, 2);
  const MatrixBinghamParams comp = make_matrix_bingham(-a, 2);
  const auto env = matrix_bingham_envelope(comp);
  const FrameBatch fb = sample_matrix_bingham_balanced(mp, s, 2000);
  double ref = 0.0;
  bool first = true;
  for (const auto& x1 : fb.frames) {
    // Orthonormal complement from the full QR of [X1].
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x1);
    const Eigen::MatrixXd full = qr.householderQ();
    const Eigen::MatrixXd x2 = full.rightCols(2);
    REQUIRE((x1.transpose() * x2).cwiseAbs().maxCoeff() < 1e-12);
    const double lf1 = -(x1.transpose() * a * x1).trace();
    const double lf2 = -(x2.transpose() * (-a) * x2).trace();
    if (first) {
      ref = lf1 - lf2;
      first = false;
    }
    // etr(-X1^T A X1) = etr(-X2^T (-A) X2) * etr(-A)
    CHECK(std::abs((lf1 - lf2) - ref) < 1e-10);
    const Eigen::MatrixXd y2 = comp.bingham.basis.transpose() * x2;
    CHECK(env.log_target(y2) - env.log_envelope(y2) <= env.log_mstar + 1e-12);
  }
  CHECK(std::abs(ref + a.trace()) < 1e-10);
}

TEST_CASE("quaternion to rotation") {
  CHECK((quat_to_rotation(Eigen::Vector4d(1, 0, 0, 0)) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((quat_to_rotation(Eigen::Vector4d(0, 1, 0, 0)) - Eigen::Vector3d(1, -1, -1).asDiagonal().toDenseMatrix())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK_THROWS_AS(Quaternion(Eigen::Vector4d(1, 1, 0, 0)), ParameterError);

  RngStream s(61);
  const Eigen::MatrixXd xs = sample_uniform_sphere(4, s, 1000);
  for (Eigen::Index i = 0; i < xs.rows(); ++i) {
    const Eigen::Vector4d x = xs.row(i).transpose();
    const Eigen::Matrix3d m = quat_to_rotation(x);
    CHECK(m == quat_to_rotation(Eigen::Vector4d(-x)));
    CHECK(orth_error(m) <= 1e-10);
    CHECK(std::abs(m.determinant() - 1) <= 1e-10);
    // Rotation by angle 2 acos|x1| about (x2, x3, x4).
    const double angle = 2 * std::acos(std::min(1.0, std::abs(x(0))));
    CHECK(std::abs(std::acos(std::clamp((m.trace() - 1) / 2, -1.0, 1.0)) - std::min(angle, 2 * M_PI - angle)) < 1e-6);
    CHECK((m * x.tail<3>() - x.tail<3>()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("matrix Fisher parameters") {
  const MatrixFisherParams3 z = mf_so3_params(Eigen::Matrix3d::Zero());
  CHECK(z.svd.delta.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.lambda4.cwiseAbs().maxCoeff() == 0.0);

  const MatrixFisherParams3 id = mf_so3_params(Eigen::Matrix3d::Identity());
  CHECK((id.svd.delta - Eigen::Vector3d(1, 1, 1)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((id.lambda4 - Eigen::Vector4d(0, 4, 4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  const MatrixFisherParams3 m = mf_so3_params(Eigen::Vector3d(2, 1, -1).asDiagonal());
  CHECK((m.svd.delta - Eigen::Vector3d(2, 1, -1)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((m.lambda4 - Eigen::Vector4d(0, 0, 2, 6)).cwiseAbs().maxCoeff() < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(m.lambda4(i) <= m.lambda4(i + 1));
}

TEST_CASE("matrix Fisher sampling on SO(3)") {
  RngStream s(62);
  SUBCASE("outputs are rotations and the trace identity holds") {
    const Eigen::Matrix3d f = test::random_matrix(s, 3, 3) * 3.0;
    const MatrixFisherParams3 mf = mf_so3_params(f);
    const RotationBatch rb = sample_matrix_fisher_so3(mf, s, 5000);
    for (std::size_t i = 0; i < rb.rotations.size(); ++i) {
      const Eigen::Matrix3d& x = rb.rotations[i];
      REQUIRE(orth_error(x) <= 1e-10);
      REQUIRE(std::abs(x.determinant() - 1) <= 1e-10);
      const Eigen::Vector4d& qv = rb.quaternions[i];
      const double rhs = mf.trace_offset() - qv.dot(mf.lambda4.asDiagonal() * qv);
      CHECK(std::abs((f.transpose() * x).trace() - rhs) < 1e-9);
    }
  }
  SUBCASE("F = 0 gives uniform columns") {
    const RotationBatch rb = sample_matrix_fisher_so3(mf_so3_params(Eigen::Matrix3d::Zero()), s, 100000);
    std::vector<double> z;
    for (const auto& x : rb.rotations) z.push_back(x(2, 0));
    CHECK(ks_uniform(z, -1, 1) < kKs1pct);
    CHECK(rb.stats.accepts == rb.stats.trials);
  }
  SUBCASE("F = 100 I concentrates at the identity") {
    const RotationBatch rb = sample_matrix_fisher_so3(mf_so3_params(100.0 * Eigen::Matrix3d::Identity()), s, 10000);
    std::vector<double> ang;
    for (const auto& x : rb.rotations) ang.push_back(std::acos(std::clamp((x.trace() - 1) / 2, -1.0, 1.0)));
    double mean = 0.0, sq = 0.0;
    for (double a : ang) mean += a / ang.size();
    for (double a : ang) sq += (a - mean) * (a - mean) / (ang.size() - 1);
    // Haar angle density (1 - cos t) times exp(tr F^T X) = exp(100 (1 + 2 cos t)).
    const auto [nodes, weights] = oracle::gauss_legendre(64);
    double num = 0.0, den = 0.0;
    const double hi = 1.0;  // the integrand is below 1e-80 beyond t = 1
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double t = 0.5 * hi * (nodes[k] + 1.0);
      const double w = weights[k] * (1 - std::cos(t)) * std::exp(200.0 * (std::cos(t) - 1.0));
      num += w * t;
      den += w;
    }
    CHECK(std::abs(mean - num / den) < 3.5 * std::sqrt(sq / ang.size()));
    CHECK(mean < 0.12);
  }
  SUBCASE("efficiency floor") {
    const std::vector<Eigen::Matrix3d> fs = {Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Identity(),
                                             10.0 * Eigen::Matrix3d::Identity(),
                                             Eigen::Vector3d(10, 5, 1).asDiagonal().toDenseMatrix()};
    for (const auto& f : fs) {
      const AcceptStats st = measure_bingham(BinghamParams::from_diagonal(mf_so3_params(f).lambda4), s, 200000);
      CHECK(st.efficiency() >= 0.44);
    }
  }
}
