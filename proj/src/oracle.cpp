#include "dirsim/oracle.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dirsim/error.hpp"

namespace dirsim::oracle {

namespace {

constexpr double kRefineTol = 1e-8;
constexpr int kMaxCircleNodes = 1 << 20;
constexpr int kMaxSphereCos = 1024;
constexpr double kPi = std::numbers::pi;

double quad_form(const Eigen::MatrixXd& m, const Eigen::VectorXd& x) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index j = 0; j < x.size(); ++j) acc += x(i) * m(i, j) * x(j);
  }
  return acc;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dim(const Eigen::VectorXd& x, int q) {
  if (x.size() != q) {
    throw UnsupportedDistribution("point of dimension " + std::to_string(x.size()) +
                                  " does not match distribution dimension " + std::to_string(q));
  }
}

Eigen::VectorXd sphere_point(double t, double phi) {
  const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
  Eigen::VectorXd x(3);
  x << st * std::cos(phi), st * std::sin(phi), t;
  return x;
}

}  // namespace

int dimension(const Distribution& dist) {
  return std::visit(
      Overloaded{[](const Uniform& d) { return d.q; },
                 [](const Bingham& d) { return static_cast<int>(d.a.rows()); },
                 [](const Acg& d) { return static_cast<int>(d.omega.rows()); },
                 [](const FisherBingham& d) { return static_cast<int>(d.mu0.size()); },
                 [](const VonMises&) { return 2; }, [](const WrappedCauchy&) { return 2; }},
      dist);
}

double log_density_unnorm(const Distribution& dist, const Eigen::VectorXd& x) {
  require_dim(x, dimension(dist));
  return std::visit(
      Overloaded{
          [](const Uniform&) { return 0.0; },
          [&x](const Bingham& d) { return -quad_form(d.a, x); },
          [&x](const Acg& d) {
            return -0.5 * static_cast<double>(x.size()) * std::log(quad_form(d.omega, x));
          },
          [&x](const FisherBingham& d) {
            double dot = 0.0;
            for (Eigen::Index i = 0; i < x.size(); ++i) dot += x(i) * d.mu0(i);
            const double quad = d.a.size() == 0 ? 0.0 : quad_form(d.a, x);
            return d.kappa * dot - quad;
          },
          [&x](const VonMises& d) { return d.kappa * x(0); },
          [&x](const WrappedCauchy& d) {
            return std::log(1.0 - d.rho * d.rho) -
                   std::log(1.0 + d.rho * d.rho - 2.0 * d.rho * x(0));
          }},
      dist);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> nodes(n), weights(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {nodes, weights};
}

QuadratureGrid segment_grid(int n) {
  QuadratureGrid g{Manifold::segment, n, 0, {}, {}};
  auto [t, w] = gauss_legendre(n);
  for (int i = 0; i < n; ++i) {
    g.nodes.push_back(Eigen::VectorXd::Constant(1, t[i]));
    g.weights.push_back(0.5 * w[i]);
  }
  return g;
}

QuadratureGrid circle_grid(int n) {
  if (n < 4096) throw ParameterError("circle grid needs at least 4096 nodes");
  QuadratureGrid g{Manifold::circle, n, 0, {}, {}};
  g.nodes.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * kPi * i / n;
    Eigen::VectorXd x(2);
    x << std::cos(theta), std::sin(theta);
    g.nodes.push_back(x);
    g.weights.push_back(1.0 / n);
  }
  return g;
}

QuadratureGrid sphere2_grid(int n_cos, int n_phi) {
  if (n_cos < 64 || n_phi < 128) {
    throw ParameterError("sphere grid needs at least 64 x 128 nodes");
  }
  QuadratureGrid g{Manifold::sphere2, n_cos, n_phi, {}, {}};
  auto [t, w] = gauss_legendre(n_cos);
  g.nodes.reserve(static_cast<std::size_t>(n_cos) * n_phi);
  for (int i = 0; i < n_cos; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      g.nodes.push_back(sphere_point(t[i], 2.0 * kPi * j / n_phi));
      g.weights.push_back(0.5 * w[i] / n_phi);
    }
  }
  return g;
}

QuadratureGrid refined(const QuadratureGrid& grid) {
  switch (grid.manifold) {
    case Manifold::segment:
      return segment_grid(2 * grid.n_primary);
    case Manifold::circle:
      return circle_grid(2 * grid.n_primary);
    case Manifold::sphere2:
      return sphere2_grid(2 * grid.n_primary, 2 * grid.n_secondary);
  }
  throw UnsupportedDistribution("unknown grid");
}

double log_grid_mean(const Distribution& dist, const QuadratureGrid& grid) {
  std::vector<double> logs(grid.nodes.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    logs[i] = log_density_unnorm(dist, grid.nodes[i]);
    top = std::max(top, logs[i]);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) acc += grid.weights[i] * std::exp(logs[i] - top);
  return top + std::log(acc);
}

double log_quadrature_normalizer(const Distribution& dist, const QuadratureGrid& grid) {
  const double coarse = -log_grid_mean(dist, grid);
  const double fine = -log_grid_mean(dist, refined(grid));
  // |c_fine / c_coarse - 1| < tol
  if (!(std::abs(std::expm1(fine - coarse)) < kRefineTol)) {
    throw NotConverged("quadrature normalizer changed by more than 1e-8 under refinement");
  }
  return fine;
}

double quadrature_normalizer(const Distribution& dist, const QuadratureGrid& grid) {
  return std::exp(log_quadrature_normalizer(dist, grid));
}

double log_quadrature_normalizer(const Distribution& dist) {
  const int q = dimension(dist);
  if (q != 2 && q != 3) {
    throw UnsupportedDistribution("quadrature oracle covers the circle and the 2-sphere only");
  }
  QuadratureGrid grid = q == 2 ? circle_grid() : sphere2_grid();
  for (;;) {
    try {
      return log_quadrature_normalizer(dist, grid);
    } catch (const NotConverged&) {
      const bool at_cap =
          q == 2 ? grid.n_primary >= kMaxCircleNodes : grid.n_primary >= kMaxSphereCos;
      if (at_cap) throw;
      grid = refined(grid);
    }
  }
}

double quadrature_normalizer(const Distribution& dist) {
  return std::exp(log_quadrature_normalizer(dist));
}

McEstimate mc_normalizer(const Distribution& dist, RngStream& s, std::size_t n) {
  if (n < 2) throw InsufficientSamples("Monte Carlo normalizer needs at least 2 draws");
  const int q = dimension(dist);
  Eigen::VectorXd u(q);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    do {
      for (int j = 0; j < q; ++j) u(j) = s.next_normal();
      norm = u.norm();
    } while (norm == 0.0);
    const double f = std::exp(log_density_unnorm(dist, u / norm));
    sum += f;
    sum_sq += f * f;
  }
  const double nd = static_cast<double>(n);
  const double mean = sum / nd;
  const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
  const double se_mean = std::sqrt(var / nd);
  return McEstimate{1.0 / mean, se_mean / (mean * mean)};
}

namespace {

// Log masses for each bin in the order used by bin_index, before normalization.
std::vector<double> bin_log_masses(const Distribution& dist, const Binning& binning) {
  constexpr int kNodesPerBin = 16;
  const auto [gt, gw] = gauss_legendre(kNodesPerBin);
  std::vector<double> out;
  std::visit(
      Overloaded{
          [&](const CircleBinning& b) {
            const double width = 2.0 * kPi / b.bins;
            for (int k = 0; k < b.bins; ++k) {
              const double lo = -kPi + k * width;
              std::vector<double> logs;
              for (int i = 0; i < kNodesPerBin; ++i) {
                const double theta = lo + 0.5 * width * (gt[i] + 1.0);
                Eigen::VectorXd x(2);
                x << std::cos(theta), std::sin(theta);
                logs.push_back(std::log(gw[i]) + log_density_unnorm(dist, x));
              }
              const double top = *std::max_element(logs.begin(), logs.end());
              double acc = 0.0;
              for (double l : logs) acc += std::exp(l - top);
              out.push_back(top + std::log(acc));
            }
          },
          [&](const Sphere2Binning& b) {
            const double t_width = 2.0 / b.n_cos;
            const double p_width = 2.0 * kPi / b.n_phi;
            for (int it = 0; it < b.n_cos; ++it) {
              for (int ip = 0; ip < b.n_phi; ++ip) {
                std::vector<double> logs;
                for (int i = 0; i < kNodesPerBin; ++i) {
                  const double t = -1.0 + it * t_width + 0.5 * t_width * (gt[i] + 1.0);
                  for (int j = 0; j < kNodesPerBin; ++j) {
                    const double phi = -kPi + ip * p_width + 0.5 * p_width * (gt[j] + 1.0);
                    const Eigen::VectorXd x = b.frame * sphere_point(t, phi);
                    logs.push_back(std::log(gw[i] * gw[j]) + log_density_unnorm(dist, x));
                  }
                }
                const double top = *std::max_element(logs.begin(), logs.end());
                double acc = 0.0;
                for (double l : logs) acc += std::exp(l - top);
                out.push_back(top + std::log(acc));
              }
            }
          }},
      binning);
  return out;
}

int bin_index(const Eigen::VectorXd& x, const Binning& binning) {
  return std::visit(
      Overloaded{[&](const CircleBinning& b) {
                   const double theta = std::atan2(x(1), x(0));
                   const int k = static_cast<int>(std::floor((theta + kPi) / (2.0 * kPi) * b.bins));
                   return std::clamp(k, 0, b.bins - 1);
                 },
                 [&](const Sphere2Binning& b) {
                   const Eigen::Vector3d y = b.frame.transpose() * x;
                   const int it = std::clamp(
                       static_cast<int>(std::floor((y(2) + 1.0) / 2.0 * b.n_cos)), 0, b.n_cos - 1);
                   const double phi = std::atan2(y(1), y(0));
                   const int ip = std::clamp(
                       static_cast<int>(std::floor((phi + kPi) / (2.0 * kPi) * b.n_phi)), 0,
                       b.n_phi - 1);
                   return it * b.n_phi + ip;
                 }},
      binning);
}

}  // namespace

GofResult gof_chisq(const Eigen::MatrixXd& samples, const Distribution& dist,
                    const Binning& binning) {
  const auto n = static_cast<double>(samples.rows());
  if (samples.rows() < 10000) throw InsufficientSamples("chi-square test needs at least 1e4 samples");
  const int expected_dim = std::holds_alternative<CircleBinning>(binning) ? 2 : 3;
  if (samples.cols() != expected_dim || dimension(dist) != expected_dim) {
    throw UnsupportedDistribution("binning, samples and distribution dimensions disagree");
  }

  const std::vector<double> log_mass = bin_log_masses(dist, binning);
  const double top = *std::max_element(log_mass.begin(), log_mass.end());
  std::vector<double> prob(log_mass.size());
  double total = 0.0;
  for (std::size_t k = 0; k < prob.size(); ++k) total += prob[k] = std::exp(log_mass[k] - top);
  for (double& p : prob) p /= total;

  std::vector<double> observed(prob.size(), 0.0);
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    observed[bin_index(samples.row(i).transpose(), binning)] += 1.0;
  }

  std::vector<std::pair<double, double>> groups;  // (expected, observed)
  double exp_acc = 0.0, obs_acc = 0.0;
  for (std::size_t k = 0; k < prob.size(); ++k) {
    exp_acc += n * prob[k];
    obs_acc += observed[k];
    if (exp_acc >= kMinExpectedPerBin) {
      groups.emplace_back(exp_acc, obs_acc);
      exp_acc = obs_acc = 0.0;
    }
  }
  if (exp_acc > 0.0 || obs_acc > 0.0) {
    if (groups.empty()) {
      groups.emplace_back(exp_acc, obs_acc);
    } else {
      groups.back().first += exp_acc;
      groups.back().second += obs_acc;
    }
  }
  if (groups.size() < 2) throw InsufficientSamples("fewer than two bins after merging");

  GofResult r;
  for (const auto& [e, o] : groups) r.statistic += (o - e) * (o - e) / e;
  r.groups = static_cast<int>(groups.size());
  r.dof = r.groups - 1;
  r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
  return r;
}

double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

}  // namespace dirsim::oracle
