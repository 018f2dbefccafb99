// dirsim: seeded sampling of directional distributions.
//
//   dirsim sample --dist bingham --lambda 0,10,10 --n 1000 --seed 7 --out s.csv
//   dirsim efficiency --dist vmf --kappa 100 --q 3 --trials 1000000
//   dirsim tables 2 --trials 1000000
//
// Exit codes: 0 success, 2 parameter error, 3 numerical failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_commands.hpp"
#include "dirsim/error.hpp"

namespace {

struct DistFlags {
  std::string dist;
  std::string lambda;
  std::string a_file;
  std::string f_file;
  std::string omega;
  std::string omega_file;
  std::string mu0;
  std::optional<double> kappa;
  int q = 0;
  int r = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

void add_dist_flags(CLI::App* app, DistFlags& f) {
  app->add_option("--dist", f.dist, "Distribution")
      ->check(CLI::IsMember({"bingham", "acg", "vmf", "fisher-bingham", "macg", "matrix-bingham",
                             "mf-so3", "uniform-sphere", "uniform-stiefel"}));
  app->add_option("--lambda", f.lambda, "Diagonal concentration A as a comma list");
  app->add_option("--a-file", f.a_file, "Concentration matrix A (CSV)");
  app->add_option("--f-file", f.f_file, "3x3 matrix Fisher parameter F (CSV)");
  app->add_option("--omega", f.omega, "Diagonal ACG/MACG Omega as a comma list");
  app->add_option("--omega-file", f.omega_file, "ACG/MACG Omega matrix (CSV)");
  app->add_option("--kappa", f.kappa, "Concentration kappa");
  app->add_option("--mu0", f.mu0, "Mean direction as a comma list");
  app->add_option("--q", f.q, "Ambient dimension");
  app->add_option("--r", f.r, "Frame size");
  app->add_option("--seed", f.seed, "Seed")->capture_default_str();
  app->add_option("--stream", f.stream, "Stream id")->capture_default_str();
}

Eigen::MatrixXd diagonal_from(const std::string& list) {
  const auto v = dirsim::cli::parse_list(list);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())).asDiagonal();
}

dirsim::cli::SampleOptions resolve(const DistFlags& f) {
  dirsim::cli::SampleOptions o;
  if (f.dist.empty()) throw dirsim::ParameterError("--dist is required");
  o.dist = f.dist;
  o.seed = f.seed;
  o.stream = f.stream;
  o.q = f.q;
  o.r = f.r;
  o.kappa = f.kappa;
  if (!f.lambda.empty() && !f.a_file.empty()) {
    throw dirsim::ParameterError("give either --lambda or --a-file, not both");
  }
  if (!f.lambda.empty()) o.a = diagonal_from(f.lambda);
  if (!f.a_file.empty()) o.a = dirsim::cli::read_matrix_csv(f.a_file);
  if (!f.omega.empty()) o.omega = diagonal_from(f.omega);
  if (!f.omega_file.empty()) o.omega = dirsim::cli::read_matrix_csv(f.omega_file);
  if (!f.f_file.empty()) {
    const Eigen::MatrixXd m = dirsim::cli::read_matrix_csv(f.f_file);
    if (m.rows() != 3 || m.cols() != 3) throw dirsim::ParameterError("--f-file must hold a 3x3 matrix");
    o.f = m;
  }
  if (!f.mu0.empty()) {
    const auto v = dirsim::cli::parse_list(f.mu0);
    Eigen::VectorXd mu = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    const double norm = mu.norm();
    if (std::abs(norm - 1.0) > 1e-6) {
      throw dirsim::ParameterError("--mu0 must be a unit vector (norm " + std::to_string(norm) + ")");
    }
    if (norm != 1.0) std::cerr << "warning: --mu0 normalized (norm was " << dirsim::cli::format_double(norm) << ")\n";
    o.mu0 = mu / norm;
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded sampling of directional distributions"};
  app.require_subcommand(1);

  DistFlags sample_flags;
  std::size_t n = 1;
  std::string format = "csv";
  std::string out;
  std::string from_manifest;
  auto* sample = app.add_subcommand("sample", "Draw samples and write a run manifest");
  add_dist_flags(sample, sample_flags);
  sample->add_option("--n", n, "Number of samples")->capture_default_str();
  sample->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--out", out, "Output path (default: stdout)");
  sample->add_option("--from-manifest", from_manifest, "Re-run the request recorded in a manifest");

  DistFlags eff_flags;
  std::uint64_t eff_trials = 1'000'000;
  auto* efficiency = app.add_subcommand("efficiency", "Measure acceptance efficiency");
  add_dist_flags(efficiency, eff_flags);
  efficiency->add_option("--trials", eff_trials, "Number of proposals")->capture_default_str();

  int which = 1;
  std::uint64_t table_trials = 1'000'000;
  std::uint64_t table_seed = 1;
  auto* tables = app.add_subcommand("tables", "Print the efficiency tables");
  tables->add_option("which", which, "1 (analytic) or 2 (simulated)")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  tables->add_option("--trials", table_trials, "Trials per row for table 2")->capture_default_str();
  tables->add_option("--seed", table_seed, "Seed for table 2")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const unsigned threads = dirsim::cli::default_threads();
    if (*sample) {
      dirsim::cli::SampleOptions o;
      if (!from_manifest.empty()) {
        std::ifstream in(from_manifest);
        if (!in) throw dirsim::ParameterError("cannot open '" + from_manifest + "'");
        nlohmann::json m;
        try {
          in >> m;
        } catch (const nlohmann::json::exception& e) {
          throw dirsim::ParameterError(std::string("manifest is not JSON: ") + e.what());
        }
        o = dirsim::cli::options_from_manifest(m.contains("manifest") ? m["manifest"] : m);
      } else {
        o = resolve(sample_flags);
        o.n = n;
        o.format = format;
      }
      o.out = out;
      o.threads = threads;
      const auto rm = dirsim::cli::cmd_sample(o, std::cout);
      for (const auto& w : rm.warnings) std::cerr << "warning: " << w << '\n';
      if (out.empty()) {
        nlohmann::json side = rm.json;
        side["wall_time_s"] = rm.wall_time_s;
        std::cerr << side.dump(2) << '\n';
      }
    } else if (*efficiency) {
      dirsim::cli::SampleOptions o = resolve(eff_flags);
      o.threads = threads;
      dirsim::cli::print_efficiency(dirsim::cli::cmd_efficiency(o, eff_trials), std::cout);
    } else if (*tables) {
      if (which == 1) {
        dirsim::cli::print_table1(dirsim::cli::table1(), std::cout);
      } else {
        dirsim::cli::print_table2(dirsim::cli::table2(table_trials, table_seed, threads), std::cout);
      }
    }
  } catch (const dirsim::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const dirsim::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
