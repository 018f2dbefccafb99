#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_commands.hpp"
#include "dirsim/error.hpp"
#include "test_helpers.hpp"

using namespace dirsim;
using namespace dirsim::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "dirsim_test_cli";
  fs::create_directories(d);
  return d;
}

SampleOptions bingham_options(std::size_t n, std::uint64_t seed) {
  SampleOptions o;
  o.dist = "bingham";
  o.a = test::diag({0, 10, 10});
  o.n = n;
  o.seed = seed;
  return o;
}

Eigen::MatrixXd parse_rows(const std::string& csv) { return parse_matrix_csv(csv); }

}  // namespace

TEST_CASE("format_double") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1e-20) == "9.9999999999999995e-21");
  for (double v : {M_PI, -1.0 / 3.0, 6.02e23, 1e-300}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("parsing helpers") {
  const std::vector<double> v = parse_list("0, 10,1e2");
  REQUIRE(v.size() == 3);
  CHECK(v[2] == 100.0);
  CHECK_THROWS_AS(parse_list("1,,2"), ParameterError);
  CHECK_THROWS_AS(parse_list("1,x"), ParameterError);

  const Eigen::MatrixXd m = parse_matrix_csv("# identity\n1,0\n\n0,1\n");
  CHECK(m.isApprox(Eigen::MatrixXd::Identity(2, 2)));
  CHECK_THROWS_AS(parse_matrix_csv("1,0\n0\n"), ParameterError);
  CHECK_THROWS_AS(parse_matrix_csv("# nothing\n"), ParameterError);
  CHECK_THROWS_AS(read_matrix_csv("/nonexistent/file.csv"), ParameterError);
}

TEST_CASE("parameter errors") {
  std::ostringstream sink;
  SampleOptions o = bingham_options(10, 1);
  o.a = Eigen::MatrixXd(test::diag({0, 1, 2}));
  (*o.a)(0, 2) = 0.5;
  CHECK_THROWS_AS(cmd_sample(o, sink), NotSymmetric);

  SampleOptions v;
  v.dist = "vmf";
  v.kappa = 1.0;
  v.mu0 = test::vec({1, 1, 0});
  CHECK_THROWS_AS(cmd_sample(v, sink), ParameterError);

  SampleOptions z = bingham_options(0, 1);
  CHECK_THROWS_AS(cmd_sample(z, sink), ParameterError);

  SampleOptions u;
  u.dist = "nope";
  CHECK_THROWS_AS(cmd_sample(u, sink), ParameterError);

  SampleOptions mb;
  mb.dist = "matrix-bingham";
  mb.a = test::diag({0, 1, 2});
  mb.r = 3;
  CHECK_THROWS_AS(cmd_sample(mb, sink), ParameterError);
}

TEST_CASE("bingham sample run") {
  std::ostringstream sink;
  const RunManifest rm = cmd_sample(bingham_options(1000, 7), sink);
  const Eigen::MatrixXd rows = parse_rows(sink.str());
  CHECK(rows.rows() == 1000);
  CHECK(rows.cols() == 3);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) CHECK(std::abs(rows.row(i).norm() - 1) < 1e-12);
  CHECK(std::abs(rm.json["empirical_efficiency"].get<double>() - 0.58) < 0.05);
  CHECK(rm.json["accepts"].get<std::uint64_t>() == 1000);
  CHECK(std::abs(rm.json["b0"].get<double>() - 1.10469) < 1e-5);
  CHECK(rm.json["build"]["rng"] == "philox4x32-10");
  CHECK(sink.str().find('\r') == std::string::npos);
}

TEST_CASE("byte-identical reruns and thread-count independence") {
  const fs::path dir = scratch_dir();
  SampleOptions o = bingham_options(20000, 11);
  o.shard_size = 1000;
  o.threads = 1;
  o.out = (dir / "a.csv").string();
  cmd_sample(o, std::cout);
  o.out = (dir / "b.csv").string();
  cmd_sample(o, std::cout);
  o.threads = 4;
  o.out = (dir / "c.csv").string();
  cmd_sample(o, std::cout);
  const std::string a = slurp(dir / "a.csv");
  CHECK(a.size() > 0);
  CHECK(a == slurp(dir / "b.csv"));
  CHECK(a == slurp(dir / "c.csv"));

  SampleOptions u;
  u.dist = "uniform-sphere";
  u.q = 3;
  u.n = 1;
  u.seed = 1;
  u.format = "json";
  u.out = (dir / "u1.json").string();
  cmd_sample(u, std::cout);
  u.out = (dir / "u2.json").string();
  cmd_sample(u, std::cout);
  CHECK(slurp(dir / "u1.json") == slurp(dir / "u2.json"));
  const auto j = nlohmann::json::parse(slurp(dir / "u1.json"));
  CHECK(j["samples"].size() == 1);
  CHECK(j["manifest"]["seed"] == 1);
}

TEST_CASE("manifest reproduces the sample file") {
  const fs::path dir = scratch_dir();
  SampleOptions o;
  o.dist = "fisher-bingham";
  o.kappa = 5.0;
  o.mu0 = test::vec({1, 0, 0});
  o.a = test::diag({0, 2, 4});
  o.n = 500;
  o.seed = 99;
  o.stream = 3;
  o.out = (dir / "fb.csv").string();
  cmd_sample(o, std::cout);
  const auto manifest = nlohmann::json::parse(slurp(dir / "fb.csv.manifest.json"));
  CHECK(manifest.contains("wall_time_s"));
  SampleOptions r = options_from_manifest(manifest);
  r.out = (dir / "fb2.csv").string();
  cmd_sample(r, std::cout);
  CHECK(slurp(dir / "fb.csv") == slurp(dir / "fb2.csv"));
}

TEST_CASE("matrix outputs") {
  std::ostringstream sink;
  SampleOptions o;
  o.dist = "mf-so3";
  o.f = Eigen::Matrix3d::Identity();
  o.n = 10;
  o.seed = 2;
  cmd_sample(o, sink);
  const Eigen::MatrixXd rows = parse_rows(sink.str());
  REQUIRE(rows.rows() == 10);
  REQUIRE(rows.cols() == 9);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const Eigen::Matrix3d x = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(
        Eigen::RowVectorXd(rows.row(i)).data());
    CHECK((x.transpose() * x - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(x.determinant() - 1) < 1e-10);
  }

  std::ostringstream s2;
  SampleOptions st;
  st.dist = "uniform-stiefel";
  st.q = 4;
  st.r = 2;
  st.n = 5;
  cmd_sample(st, s2);
  const Eigen::MatrixXd fr = parse_rows(s2.str());
  CHECK(fr.cols() == 8);
  const Eigen::MatrixXd x = Eigen::Map<const Eigen::Matrix<double, 4, 2, Eigen::RowMajor>>(
      Eigen::RowVectorXd(fr.row(0)).data());
  CHECK((x.transpose() * x - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("efficiency reports") {
  SampleOptions o;
  o.dist = "bingham";
  o.a = test::diag({0, 0, 0});
  const EfficiencyReport u = cmd_efficiency(o, 10000);
  CHECK(std::abs(*u.b0 - 3.0) < 1e-10);
  CHECK(u.empirical == 1.0);

  o.a = test::diag({0, 0, 10});
  const EfficiencyReport r = cmd_efficiency(o, 1'000'000);
  REQUIRE(r.predicted.has_value());
  CHECK(std::abs(*r.predicted - 0.835) < 0.001);
  CHECK(std::abs(r.empirical - 0.84) < 0.01);
  CHECK(r.ci_low < r.empirical);
  CHECK(r.ci_high > r.empirical);
  CHECK(*r.agrees);

  SampleOptions v;
  v.dist = "vmf";
  v.kappa = 100.0;
  v.q = 3;
  const EfficiencyReport vr = cmd_efficiency(v, 200000);
  CHECK(vr.staged);
  std::ostringstream text;
  print_efficiency(vr, text);
  CHECK(text.str().find("stage") != std::string::npos);
  REQUIRE(vr.predicted.has_value());
  CHECK(*vr.agrees);
}

TEST_CASE("tables") {
  const auto t1 = table1();
  REQUIRE(t1.size() == 8);
  const int expected[] = {66, 52, 45, 40, 36, 26, 12, 9};
  for (std::size_t i = 0; i < t1.size(); ++i) CHECK(std::lround(100 * t1[i].efficiency) == expected[i]);
  std::ostringstream os;
  print_table1(t1, os);
  CHECK(os.str().find("36") != std::string::npos);

  const auto t2 = table2(100000, 1, 1);
  REQUIRE(t2.size() == 5);
  CHECK(t2[0].stats.accepts == t2[0].stats.trials);
  CHECK(std::abs(t2[3].stats.efficiency() - 0.80) < 0.01);

  const auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
  CHECK(std::abs((0.5 - lo) - (hi - 0.5)) < 1e-12);
}
