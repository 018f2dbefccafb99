#include "cli_commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "dirsim/bingham.hpp"
#include "dirsim/error.hpp"
#include "dirsim/fisher.hpp"
#include "dirsim/matrix_models.hpp"
#include "dirsim/oracle.hpp"
#include "dirsim/sharded.hpp"

namespace dirsim::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMeasureShard = 1 << 16;
constexpr std::size_t kMcDraws = 1'000'000;

struct Shard {
  Eigen::MatrixXd rows;
  AcceptStats stats;
};

struct Prediction {
  double value;
  std::optional<double> se;
  std::string method;
};

struct Model {
  Eigen::Index row_width = 0;
  std::function<Shard(RngStream&, std::size_t)> sample;
  std::function<AcceptStats(RngStream&, std::uint64_t)> measure;  // empty: direct sampler
  std::function<std::optional<Prediction>()> predict;
  std::optional<double> b0;
  std::optional<double> log_mstar;
  bool staged = false;
  std::vector<std::string> warnings;
};

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(i).size()) != cols) {
      throw ParameterError("ragged matrix in manifest");
    }
    for (Eigen::Index j2 = 0; j2 < cols; ++j2) m(i, j2) = j.at(i).at(j2).get<double>();
  }
  return m;
}

Shard rows_shard(Eigen::MatrixXd rows, AcceptStats stats) { return Shard{std::move(rows), stats}; }

// Direct (non A/R) samplers count every draw as an accepted trial.
AcceptStats direct_stats(std::size_t n) { return AcceptStats{n, n, n}; }

Eigen::MatrixXd frames_to_rows(const std::vector<Eigen::MatrixXd>& frames, Eigen::Index q,
                               Eigen::Index r) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(frames.size()), q * r);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (Eigen::Index a = 0; a < q; ++a) {
      for (Eigen::Index b = 0; b < r; ++b) rows(static_cast<Eigen::Index>(i), a * r + b) = frames[i](a, b);
    }
  }
  return rows;
}

const Eigen::MatrixXd& need_a(const SampleOptions& o) {
  if (!o.a) throw ParameterError(o.dist + " requires --lambda or --a-file");
  return *o.a;
}

const Eigen::MatrixXd& need_omega(const SampleOptions& o) {
  if (!o.omega) throw ParameterError(o.dist + " requires --omega or --omega-file");
  return *o.omega;
}

double need_kappa(const SampleOptions& o) {
  if (!o.kappa) throw ParameterError(o.dist + " requires --kappa");
  return *o.kappa;
}

Eigen::VectorXd resolve_mu0(const SampleOptions& o, Eigen::Index q) {
  if (o.mu0) return *o.mu0;
  if (q < 2) throw ParameterError(o.dist + " requires --mu0 or --q");
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(q);
  mu(0) = 1.0;
  return mu;
}

std::optional<Prediction> bingham_prediction(const BinghamParams& bp) {
  const double log_bound = bacg_log_bound(bp.lambdas, solve_b0(bp.lambdas).b0);
  if (bp.q() <= 3) {
    const double log_c = oracle::log_quadrature_normalizer(oracle::Bingham{bp.a});
    return Prediction{std::exp(-log_c - log_bound), std::nullopt, "quadrature"};
  }
  RngStream mc(0x5EEDull, 0);
  const auto est = oracle::mc_normalizer(oracle::Bingham{bp.a}, mc, kMcDraws);
  const double eff = std::exp(-std::log(est.c) - log_bound);
  return Prediction{eff, eff * est.standard_error / est.c, "monte-carlo"};
}

Model build_model(const SampleOptions& o) {
  Model m;
  const std::string& d = o.dist;
  if (d == "bingham") {
    auto bp = std::make_shared<BinghamParams>(standardize(need_a(o)));
    const EnvelopeBound bound = solve_b0(bp->lambdas);
    m.row_width = bp->q();
    m.b0 = bound.b0;
    m.log_mstar = bound.log_mstar;
    m.sample = [bp](RngStream& s, std::size_t n) {
      auto b = sample_bingham(*bp, s, n);
      return rows_shard(std::move(b.points), b.stats);
    };
    m.measure = [bp](RngStream& s, std::uint64_t t) { return measure_bingham(*bp, s, t); };
    m.predict = [bp] { return bingham_prediction(*bp); };
  } else if (d == "acg") {
    auto ap = std::make_shared<AcgParams>(make_acg(need_omega(o)));
    m.row_width = ap->omega.rows();
    m.sample = [ap](RngStream& s, std::size_t n) {
      return rows_shard(sample_acg(*ap, s, n), direct_stats(n));
    };
  } else if (d == "vmf" || d == "fisher-bingham") {
    const double kappa = need_kappa(o);
    FisherBinghamParams params;
    if (d == "vmf") {
      params = make_vmf(kappa, resolve_mu0(o, o.q));
    } else {
      const Eigen::MatrixXd& a = need_a(o);
      params = make_fisher_bingham(kappa, resolve_mu0(o, a.rows()), a);
      if (!params.aligned) m.warnings.push_back("Fisher-Bingham parameters are not aligned");
    }
    auto fp = std::make_shared<FisherBinghamParams>(params);
    const FbEnvelope fe = fb_envelope(*fp);
    const EnvelopeBound bound = solve_b0(fe.bingham.lambdas);
    m.row_width = fp->q();
    m.b0 = bound.b0;
    m.log_mstar = fe.log_shift + bound.log_mstar;
    m.staged = true;
    m.sample = [fp](RngStream& s, std::size_t n) {
      auto b = sample_fisher_bingham(*fp, s, n);
      return rows_shard(std::move(b.points), b.stats);
    };
    m.measure = [fp](RngStream& s, std::uint64_t t) { return measure_fisher_bingham(*fp, s, t); };
    m.predict = [fp, fe, bound]() -> std::optional<Prediction> {
      if (fp->q() > 3) return std::nullopt;
      const double log_c =
          oracle::log_quadrature_normalizer(oracle::FisherBingham{fp->kappa, fp->mu0, fp->a});
      const double log_m = log_c + fe.log_shift + bacg_log_bound(fe.bingham.lambdas, bound.b0);
      return Prediction{std::exp(-log_m), std::nullopt, "quadrature"};
    };
  } else if (d == "macg") {
    const Eigen::MatrixXd omega = need_omega(o);
    const Eigen::Index q = omega.rows();
    const Eigen::Index r = o.r;
    make_acg(omega);  // validate early
    m.row_width = q * r;
    m.sample = [omega, q, r](RngStream& s, std::size_t n) {
      return rows_shard(frames_to_rows(sample_macg(omega, r, s, n), q, r), direct_stats(n));
    };
  } else if (d == "matrix-bingham") {
    auto mp = std::make_shared<MatrixBinghamParams>(make_matrix_bingham(need_a(o), o.r));
    if (mp->complement_recommended()) {
      m.warnings.push_back("r > q/2: sampling the complement with -A is more efficient");
    }
    m.row_width = mp->q() * mp->r;
    m.b0 = mp->bound.b0;
    m.log_mstar = static_cast<double>(mp->r) * mp->bound.log_mstar;
    m.sample = [mp](RngStream& s, std::size_t n) {
      auto b = sample_matrix_bingham_balanced(*mp, s, n);
      return rows_shard(frames_to_rows(b.frames, mp->q(), mp->r), b.stats);
    };
    m.measure = [mp](RngStream& s, std::uint64_t t) { return measure_matrix_bingham(*mp, s, t); };
    if (mp->r == 1) m.predict = [mp] { return bingham_prediction(mp->bingham); };
  } else if (d == "mf-so3") {
    if (!o.f) throw ParameterError("mf-so3 requires --f-file");
    auto mf = std::make_shared<MatrixFisherParams3>(mf_so3_params(*o.f));
    auto bp = std::make_shared<BinghamParams>(BinghamParams::from_diagonal(mf->lambda4));
    const EnvelopeBound bound = solve_b0(bp->lambdas);
    m.row_width = 9;
    m.b0 = bound.b0;
    m.log_mstar = bound.log_mstar;
    m.sample = [mf](RngStream& s, std::size_t n) {
      auto b = sample_matrix_fisher_so3(*mf, s, n);
      Eigen::MatrixXd rows(static_cast<Eigen::Index>(n), 9);
      for (std::size_t i = 0; i < n; ++i) {
        for (int a = 0; a < 3; ++a) {
          for (int c = 0; c < 3; ++c) rows(static_cast<Eigen::Index>(i), 3 * a + c) = b.rotations[i](a, c);
        }
      }
      return rows_shard(std::move(rows), b.stats);
    };
    m.measure = [bp](RngStream& s, std::uint64_t t) { return measure_bingham(*bp, s, t); };
    m.predict = [bp] { return bingham_prediction(*bp); };
  } else if (d == "uniform-sphere") {
    const Eigen::Index q = o.q;
    if (q < 2) throw ParameterError("uniform-sphere requires --q >= 2");
    m.row_width = q;
    m.sample = [q](RngStream& s, std::size_t n) {
      return rows_shard(sample_uniform_sphere(q, s, n), direct_stats(n));
    };
  } else if (d == "uniform-stiefel") {
    const Eigen::Index q = o.q, r = o.r;
    if (r < 1 || r > q) throw ParameterError("uniform-stiefel requires 1 <= --r <= --q");
    m.row_width = q * r;
    m.sample = [q, r](RngStream& s, std::size_t n) {
      return rows_shard(frames_to_rows(sample_uniform_stiefel(q, r, s, n), q, r), direct_stats(n));
    };
  } else {
    throw ParameterError("unknown distribution '" + d + "'");
  }
  return m;
}

json build_info(std::size_t shard_size) {
  return json{{"version", DIRSIM_VERSION},
              {"compiler", DIRSIM_COMPILER},
              {"rng", RngStream::kGeneratorName},
              {"normal_method", RngStream::kNormalMethod},
              {"shard_size", shard_size}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string token = text.substr(pos, end - pos);
    const auto first = token.find_first_not_of(" \t\r");
    const auto last = token.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw ParameterError("empty entry in list '" + text + "'");
    token = token.substr(first, last - first + 1);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      throw ParameterError("not a number: '" + token + "'");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

Eigen::MatrixXd parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    rows.push_back(parse_list(line));
    if (rows.back().size() != rows.front().size()) throw ParameterError("ragged matrix CSV");
  }
  if (rows.empty()) throw ParameterError("matrix CSV is empty");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open matrix file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_csv(buf.str());
}

unsigned default_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DIRSIM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

json parameters_json(const SampleOptions& o) {
  json p = json::object();
  if (o.a) p["a"] = matrix_to_json(*o.a);
  if (o.omega) p["omega"] = matrix_to_json(*o.omega);
  if (o.f) p["f"] = matrix_to_json(*o.f);
  if (o.kappa) p["kappa"] = *o.kappa;
  if (o.mu0) p["mu0"] = std::vector<double>(o.mu0->data(), o.mu0->data() + o.mu0->size());
  if (o.q) p["q"] = o.q;
  if (o.r) p["r"] = o.r;
  return p;
}

SampleOptions options_from_manifest(const json& m) {
  SampleOptions o;
  try {
    o.dist = m.at("distribution").get<std::string>();
    o.n = m.at("n").get<std::size_t>();
    o.seed = m.at("seed").get<std::uint64_t>();
    o.stream = m.at("stream_id").get<std::uint64_t>();
    o.format = m.at("format").get<std::string>();
    o.shard_size = m.at("build").at("shard_size").get<std::size_t>();
    const json& p = m.at("parameters");
    if (p.contains("a")) o.a = matrix_from_json(p["a"]);
    if (p.contains("omega")) o.omega = matrix_from_json(p["omega"]);
    if (p.contains("f")) {
      const Eigen::MatrixXd f = matrix_from_json(p["f"]);
      if (f.rows() != 3 || f.cols() != 3) throw ParameterError("f must be 3x3");
      o.f = f;
    }
    if (p.contains("kappa")) o.kappa = p["kappa"].get<double>();
    if (p.contains("mu0")) {
      const auto v = p["mu0"].get<std::vector<double>>();
      o.mu0 = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
    if (p.contains("q")) o.q = p["q"].get<int>();
    if (p.contains("r")) o.r = p["r"].get<int>();
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed manifest: ") + e.what());
  }
  return o;
}

RunManifest cmd_sample(const SampleOptions& o, std::ostream& stdout_sink) {
  if (o.n < 1) throw ParameterError("--n must be at least 1");
  if (o.format != "csv" && o.format != "json") throw ParameterError("--format must be csv or json");
  const auto start = std::chrono::steady_clock::now();
  const Model model = build_model(o);
  const std::size_t shard_size = o.shard_size ? o.shard_size : kDefaultShardSize;

  const auto shards = run_sharded(RngStream(o.seed, o.stream), o.n, shard_size, o.threads,
                                  [&](RngStream& s, std::size_t count, std::size_t) {
                                    return model.sample(s, count);
                                  });
  RunManifest rm;
  rm.warnings = model.warnings;
  for (const auto& sh : shards) rm.stats += sh.stats;

  rm.json = {{"distribution", o.dist},
             {"parameters", parameters_json(o)},
             {"seed", o.seed},
             {"stream_id", o.stream},
             {"n", o.n},
             {"format", o.format},
             {"b0", optional_json(model.b0)},
             {"log_mstar", optional_json(model.log_mstar)},
             {"trials", rm.stats.trials},
             {"accepts", rm.stats.accepts},
             {"stage_passes", rm.stats.stage_passes},
             {"empirical_efficiency", rm.stats.efficiency()},
             {"build", build_info(shard_size)}};

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw ParameterError("cannot write '" + o.out + "'");
  }
  std::ostream& os = o.out.empty() ? stdout_sink : static_cast<std::ostream&>(file);
  if (o.format == "csv") {
    std::string line;
    for (const auto& sh : shards) {
      for (Eigen::Index i = 0; i < sh.rows.rows(); ++i) {
        line.clear();
        for (Eigen::Index j = 0; j < sh.rows.cols(); ++j) {
          if (j) line += ',';
          line += format_double(sh.rows(i, j));
        }
        line += '\n';
        os << line;
      }
    }
  } else {
    json samples = json::array();
    for (const auto& sh : shards) {
      for (Eigen::Index i = 0; i < sh.rows.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < sh.rows.cols(); ++j) row.push_back(sh.rows(i, j));
        samples.push_back(std::move(row));
      }
    }
    os << json{{"manifest", rm.json}, {"samples", samples}}.dump(1) << '\n';
  }
  if (file.is_open()) {
    file.close();
    if (!file) throw ParameterError("failed writing '" + o.out + "'");
  }

  rm.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.out.empty()) {
    json sidecar = rm.json;
    sidecar["wall_time_s"] = rm.wall_time_s;
    sidecar["threads"] = o.threads;
    std::ofstream mf(o.out + ".manifest.json", std::ios::binary);
    if (!mf) throw ParameterError("cannot write manifest next to '" + o.out + "'");
    mf << sidecar.dump(2) << '\n';
  }
  return rm;
}

std::pair<double, double> wilson_interval(std::uint64_t accepts, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(accepts) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

EfficiencyReport cmd_efficiency(const SampleOptions& o, std::uint64_t trials) {
  if (trials < 1) throw ParameterError("--trials must be at least 1");
  const Model model = build_model(o);
  EfficiencyReport r;
  r.dist = o.dist;
  r.b0 = model.b0;
  r.log_mstar = model.log_mstar;
  r.staged = model.staged;
  if (!model.measure) {
    // Direct samplers never reject.
    r.stats = direct_stats(trials);
  } else {
    const auto shards = run_sharded(RngStream(o.seed, o.stream), trials, kMeasureShard, o.threads,
                                    [&](RngStream& s, std::size_t count, std::size_t) {
                                      return model.measure(s, count);
                                    });
    for (const auto& st : shards) r.stats += st;
  }
  r.empirical = r.stats.efficiency();
  std::tie(r.ci_low, r.ci_high) = wilson_interval(r.stats.accepts, r.stats.trials);
  if (model.predict) {
    if (const auto pred = model.predict()) {
      r.predicted = pred->value;
      r.predicted_se = pred->se;
      r.predicted_method = pred->method;
      const double p = std::clamp(pred->value, 0.0, 1.0);
      const double se_binom = std::sqrt(p * (1.0 - p) / static_cast<double>(r.stats.trials));
      const double se_pred = pred->se.value_or(0.0);
      const double tol = 3.0 * std::sqrt(se_binom * se_binom + se_pred * se_pred);
      r.agrees = std::abs(r.empirical - pred->value) <= std::max(tol, 1e-12);
    }
  }
  return r;
}

void print_efficiency(const EfficiencyReport& r, std::ostream& os) {
  os << std::setprecision(6);
  os << "distribution:         " << r.dist << '\n';
  if (r.b0) os << "b0:                   " << *r.b0 << '\n';
  if (r.log_mstar) os << "log M*:               " << *r.log_mstar << '\n';
  os << "trials:               " << r.stats.trials << '\n';
  os << "accepts:              " << r.stats.accepts << '\n';
  os << "empirical efficiency: " << r.empirical << "  (95% CI " << r.ci_low << " .. " << r.ci_high
     << ")\n";
  if (r.staged && r.stats.trials > 0) {
    const double acg_stage = static_cast<double>(r.stats.stage_passes) / r.stats.trials;
    const double bing_stage = r.stats.stage_passes == 0
                                  ? 0.0
                                  : static_cast<double>(r.stats.accepts) / r.stats.stage_passes;
    os << "ACG stage efficiency:     " << acg_stage << '\n';
    os << "Bingham stage efficiency: " << bing_stage << '\n';
  }
  if (r.predicted) {
    os << "predicted efficiency: " << *r.predicted << "  [" << r.predicted_method;
    if (r.predicted_se) os << ", se " << *r.predicted_se;
    os << "]\n";
    os << "agreement:            " << (*r.agrees ? "yes" : "NO") << '\n';
  } else {
    os << "predicted efficiency: n/a\n";
  }
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (int p : {1, 2, 3, 4, 5, 10, 50, 100}) {
    const double m = normal_cauchy_bound(p);
    rows.push_back({p, m, 1.0 / m});
  }
  return rows;
}

std::vector<Table2Row> table2(std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  const std::pair<double, double> grid[] = {{0, 0}, {0, 10}, {10, 10}, {0, 100}, {100, 100}};
  std::vector<Table2Row> rows;
  std::uint64_t stream = 0;
  for (const auto& [l2, l3] : grid) {
    Eigen::VectorXd lambdas(3);
    lambdas << 0.0, l2, l3;
    const BinghamParams bp = BinghamParams::from_diagonal(lambdas);
    const EnvelopeBound bound = solve_b0(lambdas);
    const auto shards = run_sharded(RngStream(seed, stream++), trials, kMeasureShard, threads,
                                    [&](RngStream& s, std::size_t count, std::size_t) {
                                      return measure_bingham(bp, s, count);
                                    });
    AcceptStats st;
    for (const auto& sh : shards) st += sh;
    const double c = oracle::quadrature_normalizer(oracle::Bingham{bp.a});
    rows.push_back({l2, l3, bound.b0, bound.log_mstar, st, predicted_efficiency(bp, c)});
  }
  return rows;
}

void print_table1(const std::vector<Table1Row>& rows, std::ostream& os) {
  os << "Multivariate normal via multivariate Cauchy envelope (b = 1)\n";
  os << std::setw(5) << "p" << std::setw(14) << "M" << std::setw(14) << "1/M" << std::setw(8)
     << "eff" << '\n';
  for (const auto& r : rows) {
    os << std::setw(5) << r.p << std::setw(14) << std::fixed << std::setprecision(6) << r.m
       << std::setw(14) << r.efficiency << std::setw(7) << std::setprecision(0)
       << 100.0 * r.efficiency << "%\n";
  }
  os.unsetf(std::ios::floatfield);
}

void print_table2(const std::vector<Table2Row>& rows, std::ostream& os) {
  os << "BACG on S_2, A = diag(0, lambda2, lambda3)\n";
  os << std::setw(8) << "lambda2" << std::setw(9) << "lambda3" << std::setw(11) << "b0"
     << std::setw(11) << "M(emp)" << std::setw(11) << "eff(emp)" << std::setw(11) << "eff(pred)"
     << std::setw(12) << "trials" << std::setw(7) << "eff" << '\n';
  for (const auto& r : rows) {
    const double eff = r.stats.efficiency();
    os << std::fixed << std::setprecision(0) << std::setw(8) << r.lambda2 << std::setw(9)
       << r.lambda3 << std::setprecision(5) << std::setw(11) << r.b0 << std::setw(11)
       << expected_trials(r.stats) << std::setw(11) << eff << std::setw(11) << r.predicted
       << std::setw(12) << r.stats.trials << std::setprecision(0) << std::setw(6) << 100.0 * eff
       << "%\n";
  }
  os.unsetf(std::ios::floatfield);
}

}  // namespace dirsim::cli
