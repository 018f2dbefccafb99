#include "dirsim/numkern.hpp"

#include <cmath>
#include <string>

#include "dirsim/error.hpp"

namespace dirsim {

namespace {

constexpr double kSymmetryTol = 1e-8;

Eigen::MatrixXd checked_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  if (a.rows() != a.cols()) {
    throw NotSymmetric("matrix is not square (" + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + ")");
  }
  if (!a.allFinite()) throw NotSymmetric("matrix has non-finite entries");
  const double asym = max_abs(a - a.transpose());
  if (asym > kSymmetryTol * max_abs(a)) {
    throw NotSymmetric("matrix asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  return 0.5 * (a + a.transpose());
}

void fix_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) > std::abs(v(imax, j))) imax = i;
    }
    if (v(imax, j) < 0.0) v.col(j) = -v.col(j);
  }
}

}  // namespace

double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

SymEigen sym_eigen(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  const Eigen::MatrixXd sym = checked_symmetric(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("symmetric eigensolver did not converge");
  }
  SymEigen out{solver.eigenvalues(), solver.eigenvectors()};
  fix_signs(out.eigenvectors);
  return out;
}

Eigen::MatrixXd chol_lower(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  const Eigen::MatrixXd sym = checked_symmetric(a);
  const Eigen::Index n = sym.rows();
  // Plain column Cholesky so the pivot test is explicit.
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = sym(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0)) {
      throw NotPositiveDefinite("non-positive Cholesky pivot at column " + std::to_string(j));
    }
    l(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (sym(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  return l;
}

Eigen::MatrixXd sym_inv_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  const SymEigen eig = sym_eigen(a);
  if (!(eig.eigenvalues(0) > 0.0)) {
    throw NotPositiveDefinite("matrix has a non-positive eigenvalue");
  }
  const Eigen::VectorXd d = eig.eigenvalues.array().rsqrt();
  Eigen::MatrixXd s = eig.eigenvectors * d.asDiagonal() * eig.eigenvectors.transpose();
  return 0.5 * (s + s.transpose());
}

SignedSvd3 signed_svd3(const Eigen::Matrix3d& f) {
  if (!f.allFinite()) throw ParameterError("matrix has non-finite entries");
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SignedSvd3 out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  if (out.u.determinant() < 0.0) {
    out.u.col(2) = -out.u.col(2);
    out.delta(2) = -out.delta(2);
  }
  if (out.v.determinant() < 0.0) {
    out.v.col(2) = -out.v.col(2);
    out.delta(2) = -out.delta(2);
  }
  if (out.delta(2) == 0.0) out.delta(2) = 0.0;  // no negative zero
  return out;
}

}  // namespace dirsim
