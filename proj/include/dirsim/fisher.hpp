#pragma once

// von Mises-Fisher and Fisher-Bingham sampling on S_{q-1}:
//   f*(x) = exp(kappa x^T mu0 - x^T A x).
// Since (1 - x^T mu0)^2 >= 0, f*(x) <= exp(kappa - x^T A1 x) with
// A1 = A + (kappa/2)(I - mu0 mu0^T), a Bingham density that is in turn bounded
// by the BACG envelope. Both bounds are applied in a single acceptance test.

#include <Eigen/Dense>

#include "dirsim/ar.hpp"
#include "dirsim/bingham.hpp"
#include "dirsim/rng.hpp"

namespace dirsim {

struct FisherBinghamParams {
  double kappa = 0.0;
  Eigen::VectorXd mu0;
  Eigen::MatrixXd a;   // standardized, smallest eigenvalue 0
  Eigen::MatrixXd a1;  // Bingham envelope matrix A + (kappa/2)(I - mu0 mu0^T)
  /// mu0 is an eigenvector of A and the density has its mode there.
  bool aligned = false;

  Eigen::Index q() const { return mu0.size(); }
};

/// Validates and standardizes. mu0 is renormalized when its norm is within
/// 1e-6 of one; otherwise ParameterError.
FisherBinghamParams make_fisher_bingham(double kappa, const Eigen::VectorXd& mu0,
                                        const Eigen::Ref<const Eigen::MatrixXd>& a_raw);

FisherBinghamParams make_vmf(double kappa, const Eigen::VectorXd& mu0);

struct FbEnvelope {
  BinghamParams bingham;  // standardized A1
  double log_shift = 0.0; // log f*(x) <= log_shift - x^T bingham.a x
};

FbEnvelope fb_envelope(const FisherBinghamParams& fp);

/// Chained envelope in the eigenbasis of A1 (coordinates y = basis^T x). The
/// staged ratio reports the ACG stage first and the Bingham stage second.
Envelope<Eigen::VectorXd> fisher_bingham_envelope(const FisherBinghamParams& fp,
                                                   const FbEnvelope& fe,
                                                   const EnvelopeBound& bound);

/// Log ratio of the Fisher-Bingham density to its Bingham envelope,
/// -(kappa/2)(1 - x^T mu0)^2, at a point in the original coordinates.
double fb_bingham_stage_log_ratio(const FisherBinghamParams& fp, const Eigen::VectorXd& x);

SampleBatch sample_fisher_bingham(const FisherBinghamParams& fp, RngStream& s, std::size_t n);

SampleBatch sample_vmf(double kappa, const Eigen::VectorXd& mu0, RngStream& s, std::size_t n);

AcceptStats measure_fisher_bingham(const FisherBinghamParams& fp, RngStream& s,
                                   std::uint64_t trials);

}  // namespace dirsim
