#pragma once

// Matrix-variate samplers: uniform sphere and Stiefel frames, the matrix ACG,
// the balanced matrix Bingham etr(-X^T A X) on V_{r,q}, and the matrix Fisher
// distribution etr(F^T X) on SO(3) through unit quaternions.

#include <Eigen/Dense>
#include <vector>

#include "dirsim/ar.hpp"
#include "dirsim/bingham.hpp"
#include "dirsim/numkern.hpp"
#include "dirsim/rng.hpp"

namespace dirsim {

/// q x r frames with orthonormal columns plus acceptance statistics.
struct FrameBatch {
  std::vector<Eigen::MatrixXd> frames;
  AcceptStats stats;
};

/// x = u/|u|, u ~ N(0, I_q); one unit vector per row.
Eigen::MatrixXd sample_uniform_sphere(Eigen::Index q, RngStream& s, std::size_t n);

/// X = U (U^T U)^{-1/2} with U a q x r standard normal matrix.
std::vector<Eigen::MatrixXd> sample_uniform_stiefel(Eigen::Index q, Eigen::Index r, RngStream& s,
                                                    std::size_t n);

/// Matrix ACG: columns of Y iid N(0, Omega^{-1}), X = Y (Y^T Y)^{-1/2}.
std::vector<Eigen::MatrixXd> sample_macg(const Eigen::Ref<const Eigen::MatrixXd>& omega,
                                         Eigen::Index r, RngStream& s, std::size_t n);

/// log |X^T Omega X|^{-q/2}, the unnormalized MACG log density.
double macg_log_density(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& x);

struct MatrixBinghamParams {
  BinghamParams bingham;  // standardized A
  Eigen::Index r = 1;
  EnvelopeBound bound;    // same b0 as the vector case

  Eigen::Index q() const { return bingham.q(); }
  /// r > q/2: sampling the (q-r)-frame complement with -A is recommended.
  bool complement_recommended() const { return 2 * r > q(); }
};

/// Throws ParameterError unless 1 <= r <= q-1 (r = q is the uniform law on
/// O(q); use sample_uniform_stiefel).
MatrixBinghamParams make_matrix_bingham(const Eigen::Ref<const Eigen::MatrixXd>& a_raw,
                                        Eigen::Index r);

/// Envelope over frames in the eigenbasis of A; log M* = r log M*_1.
Envelope<Eigen::MatrixXd> matrix_bingham_envelope(const MatrixBinghamParams& mp);

FrameBatch sample_matrix_bingham_balanced(const MatrixBinghamParams& mp, RngStream& s,
                                          std::size_t n);

AcceptStats measure_matrix_bingham(const MatrixBinghamParams& mp, RngStream& s,
                                   std::uint64_t trials);

/// Unsigned unit quaternion (x1, x2, x3, x4), x1 the scalar part.
class Quaternion {
 public:
  /// Normalizes; throws ParameterError when the norm is not within 1e-6 of 1.
  explicit Quaternion(const Eigen::Vector4d& x);
  const Eigen::Vector4d& coeffs() const { return x_; }

 private:
  Eigen::Vector4d x_;
};

/// Quadratic map S_3 -> SO(3); M(x) = M(-x).
Eigen::Matrix3d quat_to_rotation(const Quaternion& x);
Eigen::Matrix3d quat_to_rotation(const Eigen::Vector4d& x);

struct MatrixFisherParams3 {
  Eigen::Matrix3d f;
  SignedSvd3 svd;
  /// (0, 2(d2+d3), 2(d1+d3), 2(d1+d2)), nondecreasing.
  Eigen::Vector4d lambda4;

  /// tr(F^T X) = trace_offset() - x^T diag(lambda4) x for X = U M(x) V^T.
  double trace_offset() const { return svd.delta.sum(); }
};

MatrixFisherParams3 mf_so3_params(const Eigen::Matrix3d& f);

struct RotationBatch {
  std::vector<Eigen::Matrix3d> rotations;
  std::vector<Eigen::Vector4d> quaternions;  // the Bingham draws behind each rotation
  AcceptStats stats;
};

RotationBatch sample_matrix_fisher_so3(const MatrixFisherParams3& mf, RngStream& s,
                                       std::size_t n);

}  // namespace dirsim
