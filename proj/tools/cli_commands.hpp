#pragma once

// Command implementations behind the `dirsim` executable, kept in a library
// so the test suite can drive them directly.

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dirsim/ar.hpp"

namespace dirsim::cli {

/// Fully resolved sampling request. Matrix parameters are loaded before this
/// point, so a manifest holding these fields reproduces the run.
struct SampleOptions {
  std::string dist;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::optional<Eigen::MatrixXd> a;      // Bingham / Fisher-Bingham / matrix Bingham
  std::optional<Eigen::MatrixXd> omega;  // ACG / MACG
  std::optional<Eigen::Matrix3d> f;      // matrix Fisher on SO(3)
  std::optional<double> kappa;
  std::optional<Eigen::VectorXd> mu0;
  int q = 0;
  int r = 0;
  std::string format = "csv";
  std::string out;  // empty: samples to stdout
  unsigned threads = 1;
  std::size_t shard_size = 0;  // 0: library default
};

struct RunManifest {
  nlohmann::json json;  // everything except wall time
  double wall_time_s = 0.0;
  AcceptStats stats;
  std::vector<std::string> warnings;
};

/// Reads a numeric CSV matrix ('#' comments and blank lines skipped).
Eigen::MatrixXd read_matrix_csv(const std::string& path);
Eigen::MatrixXd parse_matrix_csv(const std::string& text);
std::vector<double> parse_list(const std::string& text);

/// Formats with 17 significant digits, locale-independent.
std::string format_double(double v);

/// Thread cap from DIRSIM_THREADS (defaults to hardware concurrency).
unsigned default_threads();

/// Canonical JSON form of the resolved parameters and back.
nlohmann::json parameters_json(const SampleOptions& o);
SampleOptions options_from_manifest(const nlohmann::json& manifest);

/// Runs the sampler and writes the sample file (or stdout) and, when `out` is
/// set, the sidecar `<out>.manifest.json`.
RunManifest cmd_sample(const SampleOptions& o, std::ostream& stdout_sink);

struct EfficiencyReport {
  std::string dist;
  std::optional<double> b0;
  std::optional<double> log_mstar;
  AcceptStats stats;
  double empirical = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool staged = false;  // Fisher-Bingham family: stage efficiencies meaningful
  std::optional<double> predicted;
  std::optional<double> predicted_se;  // Monte Carlo oracle only
  std::string predicted_method;        // "quadrature" or "monte-carlo"
  std::optional<bool> agrees;
};

EfficiencyReport cmd_efficiency(const SampleOptions& o, std::uint64_t trials);
void print_efficiency(const EfficiencyReport& r, std::ostream& os);

struct Table1Row {
  int p;
  double m;
  double efficiency;
};
std::vector<Table1Row> table1();

struct Table2Row {
  double lambda2;
  double lambda3;
  double b0;
  double log_mstar;
  AcceptStats stats;
  double predicted;
};
std::vector<Table2Row> table2(std::uint64_t trials, std::uint64_t seed, unsigned threads);

void print_table1(const std::vector<Table1Row>& rows, std::ostream& os);
void print_table2(const std::vector<Table2Row>& rows, std::ostream& os);

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::uint64_t accepts, std::uint64_t trials);

}  // namespace dirsim::cli
