#pragma once

// Generic acceptance-rejection engine. Every ratio is handled in log space:
// a proposal x ~ g is accepted iff log W < log f*(x) - log M* - log g*(x).

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "dirsim/error.hpp"
#include "dirsim/rng.hpp"

namespace dirsim {

struct AcceptStats {
  std::uint64_t trials = 0;
  std::uint64_t accepts = 0;
  /// Proposals that passed the first stage of a two-stage envelope
  /// (equal to trials when the envelope has a single stage).
  std::uint64_t stage_passes = 0;

  double efficiency() const {
    return trials == 0 ? 0.0 : static_cast<double>(accepts) / static_cast<double>(trials);
  }

  AcceptStats& operator+=(const AcceptStats& o) {
    trials += o.trials;
    accepts += o.accepts;
    stage_passes += o.stage_passes;
    return *this;
  }
};

inline AcceptStats operator+(AcceptStats a, const AcceptStats& b) { return a += b; }

/// Empirical estimate of M (mean number of trials per accepted sample).
inline double expected_trials(const AcceptStats& stats) {
  if (stats.accepts == 0) throw NoAccepts("no accepted trials; cannot estimate M");
  return static_cast<double>(stats.trials) / static_cast<double>(stats.accepts);
}

/// Log acceptance ratio split through an intermediate envelope h*:
/// first = log h* - log M* - log g*, second = log f* - log h*. Both are <= 0
/// for a valid chained bound.
struct StagedLogRatio {
  double first;
  double second;
};

template <class Point>
struct Envelope {
  std::function<Point(RngStream&)> propose;
  std::function<double(const Point&)> log_target;    // log f*
  std::function<double(const Point&)> log_envelope;  // log g*
  double log_mstar = 0.0;
  /// Optional; when set it replaces the direct ratio and enables stage accounting.
  std::function<StagedLogRatio(const Point&)> staged_log_ratio;

  /// log f*(x) - log M* - log g*(x); never positive for a sound envelope.
  double log_accept_ratio(const Point& x) const {
    if (staged_log_ratio) {
      const auto r = staged_log_ratio(x);
      return r.first + r.second;
    }
    return log_target(x) - log_mstar - log_envelope(x);
  }
};

inline constexpr double kBoundTolerance = 1e-9;
inline constexpr std::uint64_t kTrialCap = 1'000'000'000ull;

namespace detail {

[[noreturn]] inline void report_violation(double excess) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "envelope bound violated by " << excess << " in log space";
  throw BoundViolation(msg.str());
}

// One trial. Returns true on acceptance; updates stats.
template <class Point>
bool run_trial(const Envelope<Point>& e, RngStream& s, const Point& x, AcceptStats& stats) {
  ++stats.trials;
  const double log_w = std::log(s.next_uniform());
  if (e.staged_log_ratio) {
    const StagedLogRatio r = e.staged_log_ratio(x);
    if (r.first > kBoundTolerance) report_violation(r.first);
    if (r.second > kBoundTolerance) report_violation(r.second);
    // A single uniform serves both stages: P(W < a) = a, P(W < ab | W < a) = b.
    if (log_w < r.first) ++stats.stage_passes;
    if (log_w < r.first + r.second) {
      ++stats.accepts;
      return true;
    }
    return false;
  }
  const double lr = e.log_target(x) - e.log_mstar - e.log_envelope(x);
  if (lr > kBoundTolerance) report_violation(lr);
  ++stats.stage_passes;
  if (log_w < lr) {
    ++stats.accepts;
    return true;
  }
  return false;
}

}  // namespace detail

/// Draws n exact samples from the normalized target. Throws BoundViolation on
/// a broken envelope and TrialCapExceeded after kTrialCap trials.
template <class Point>
std::pair<std::vector<Point>, AcceptStats> ar_sample(const Envelope<Point>& e, RngStream& s,
                                                     std::size_t n) {
  std::vector<Point> out;
  out.reserve(n);
  AcceptStats stats;
  while (out.size() < n) {
    if (stats.trials >= kTrialCap) {
      throw TrialCapExceeded("acceptance-rejection exceeded the trial cap of 1e9");
    }
    Point x = e.propose(s);
    if (detail::run_trial(e, s, x, stats)) out.push_back(std::move(x));
  }
  return {std::move(out), stats};
}

/// Runs exactly `trials` proposals and reports the acceptance counts.
template <class Point>
AcceptStats ar_measure(const Envelope<Point>& e, RngStream& s, std::uint64_t trials) {
  AcceptStats stats;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Point x = e.propose(s);
    detail::run_trial(e, s, x, stats);
  }
  return stats;
}

}  // namespace dirsim
