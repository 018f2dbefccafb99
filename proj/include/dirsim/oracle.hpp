#pragma once

// Brute-force validation oracles: unnormalized densities, quadrature and
// Monte Carlo normalizing constants, and goodness-of-fit tests.
//
// The densities here are written independently of the sampler-side code on
// purpose; nothing in this module may call into bingham/fisher/matrix_models.
// All densities are w.r.t. the uniform measure on the manifold.

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "dirsim/rng.hpp"

namespace dirsim::oracle {

struct Uniform {
  int q = 3;
};
/// exp(-x^T A x)
struct Bingham {
  Eigen::MatrixXd a;
};
/// (x^T Omega x)^{-q/2}
struct Acg {
  Eigen::MatrixXd omega;
};
/// exp(kappa x^T mu0 - x^T A x); an empty A means von Mises-Fisher.
struct FisherBingham {
  double kappa = 0.0;
  Eigen::VectorXd mu0;
  Eigen::MatrixXd a;
};
/// Circle only: exp(kappa y_1).
struct VonMises {
  double kappa = 0.0;
};
/// Circle only: (1 - rho^2) / (1 + rho^2 - 2 rho y_1).
struct WrappedCauchy {
  double rho = 0.0;
};

using Distribution = std::variant<Uniform, Bingham, Acg, FisherBingham, VonMises, WrappedCauchy>;

/// Ambient dimension q of the distribution.
int dimension(const Distribution& dist);

/// Throws UnsupportedDistribution when x does not match the distribution's dimension.
double log_density_unnorm(const Distribution& dist, const Eigen::VectorXd& x);

enum class Manifold { circle, sphere2, segment };

/// Nodes with positive weights summing to one (uniform-measure convention).
/// segment: Gauss-Legendre in t on [-1, 1] (nodes are 1-vectors).
/// circle: equispaced angles. sphere2: Gauss-Legendre in cos(theta) times
/// equispaced longitude.
struct QuadratureGrid {
  Manifold manifold = Manifold::sphere2;
  int n_primary = 0;    // segment/circle nodes, or cos(theta) nodes
  int n_secondary = 0;  // longitude nodes (sphere2 only)
  std::vector<Eigen::VectorXd> nodes;
  std::vector<double> weights;
};

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

QuadratureGrid segment_grid(int n = 64);
QuadratureGrid circle_grid(int n = 4096);
QuadratureGrid sphere2_grid(int n_cos = 64, int n_phi = 128);
/// Same manifold at twice the resolution in every direction.
QuadratureGrid refined(const QuadratureGrid& grid);

/// log of the grid average of f*.
double log_grid_mean(const Distribution& dist, const QuadratureGrid& grid);

/// c = 1 / <f*>_grid; throws NotConverged if doubling the grid changes c by
/// 1e-8 or more (relative).
double quadrature_normalizer(const Distribution& dist, const QuadratureGrid& grid);
double log_quadrature_normalizer(const Distribution& dist, const QuadratureGrid& grid);

/// Starts from the minimum grid for the distribution's dimension (q = 2 or 3)
/// and doubles until the refinement check passes.
double log_quadrature_normalizer(const Distribution& dist);
double quadrature_normalizer(const Distribution& dist);

struct McEstimate {
  double c = 0.0;
  double standard_error = 0.0;
};

/// c = 1 / mean f*(u) over uniform draws u, with a delta-method standard error.
McEstimate mc_normalizer(const Distribution& dist, RngStream& s, std::size_t n);

struct CircleBinning {
  int bins = 64;
};
/// Product bins in (cos theta, phi) of the coordinates frame^T x.
struct Sphere2Binning {
  int n_cos = 16;
  int n_phi = 16;
  Eigen::Matrix3d frame = Eigen::Matrix3d::Identity();
};
using Binning = std::variant<CircleBinning, Sphere2Binning>;

struct GofResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
  int groups = 0;  // bins after merging sparse ones
};

inline constexpr double kMinExpectedPerBin = 20.0;

/// Chi-square test of samples (one per row) against the quadrature-predicted
/// bin masses. Consecutive bins are merged until each expected count is at
/// least 20. Requires at least 1e4 samples.
GofResult gof_chisq(const Eigen::MatrixXd& samples, const Distribution& dist,
                    const Binning& binning);

/// Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf);

}  // namespace dirsim::oracle
