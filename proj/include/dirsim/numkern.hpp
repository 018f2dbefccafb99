#pragma once

// Small dense linear-algebra kernels shared by the samplers. All routines are
// pure and deterministic for identical input on a given build.

#include <Eigen/Dense>

namespace dirsim {

struct SymEigen {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // column i pairs with eigenvalues(i)
};

/// Signed SVD F = U diag(delta) V^T with U, V rotations and
/// delta(0) >= delta(1) >= |delta(2)|, delta(2) < 0 iff det(F) < 0.
struct SignedSvd3 {
  Eigen::Matrix3d u;
  Eigen::Vector3d delta;
  Eigen::Matrix3d v;
};

/// Largest absolute entry (0 for an empty matrix).
double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& a);

/// Eigendecomposition of a symmetric matrix. The input is symmetrized as
/// (A + A^T)/2 after the asymmetry check (tolerance 1e-8 * max|a|). Each
/// eigenvector is signed so that its largest-magnitude entry is positive
/// (first such entry on ties).
SymEigen sym_eigen(const Eigen::Ref<const Eigen::MatrixXd>& a);

/// Lower Cholesky factor. Throws NotPositiveDefinite on a non-positive pivot.
Eigen::MatrixXd chol_lower(const Eigen::Ref<const Eigen::MatrixXd>& a);

/// a^{-1/2} through the eigendecomposition, so that S a S = I.
Eigen::MatrixXd sym_inv_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& a);

SignedSvd3 signed_svd3(const Eigen::Matrix3d& f);

}  // namespace dirsim
