#include "ocdm/cli.hpp"

#include <yaml-cpp/yaml.h>

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ocdm/io.hpp"

namespace ocdm::cli {

namespace fs = std::filesystem;

ExperimentPlan RunConfig::plan(const CfoRange& range) const {
  ExperimentPlan p;
  p.cfg = system;
  p.snr_db = snr_db;
  p.runs = runs;
  p.blocks = blocks;
  p.cfo_range = range;
  p.estimators = estimators;
  p.detectors = equalizers;
  p.cfo_mode = cfo_mode;
  p.grid_size = grid;
  p.refine_iters = refine_iters;
  p.ml_cfg = ml_system;
  p.ml_cap = ml_cap;
  p.master_seed = seed;
  p.workers = workers;
  return p;
}

RunConfig preset(std::string_view name) {
  RunConfig cfg;
  cfg.system = SystemConfig{16, 12, 2, 2, 1.0, 0.0};
  if (name == "default") return cfg;
  if (name == "fig1") {
    cfg.system.cp_len = 4;
    cfg.cfo_ranges = {CfoRange{-0.05, 0.05}, CfoRange{-0.1, 0.1}, CfoRange{-1.0, 1.0}};
    cfg.estimators = {Estimator::proposed, Estimator::cp_baseline, Estimator::two_step};
    return cfg;
  }
  if (name == "fig2") {
    cfg.snr_db = {0, 5, 10, 15, 20, 25, 30};
    cfg.blocks = 1000;
    cfg.equalizers = {Detector::zf, Detector::mmse, Detector::ml};
    cfg.ml_system = SystemConfig{8, 4, 2, 2, 1.0, 0.0};
    return cfg;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected default, fig1 or fig2)");
}

namespace {

struct Source {
  const std::string& name;

  [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const {
    const YAML::Mark mark = node.Mark();
    if (mark.is_null()) throw ConfigError(name + ": " + message);
    throw ConfigError(name + ":" + std::to_string(mark.line + 1) + ": " + message);
  }

  template <class T>
  T scalar(const YAML::Node& node, const char* what) const {
    if (!node.IsScalar()) fail(node, std::string(what) + " must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, std::string("invalid value '") + node.Scalar() + "' for " + what);
    }
  }

  std::uint64_t count(const YAML::Node& node, const char* what, std::uint64_t min) const {
    if (node.IsScalar() && !node.Scalar().empty() && node.Scalar().front() == '-')
      fail(node, std::string(what) + " must be non-negative");
    const auto v = scalar<std::uint64_t>(node, what);
    if (v < min) fail(node, std::string(what) + " must be at least " + std::to_string(min));
    return v;
  }

  std::vector<double> numbers(const YAML::Node& node, const char* what) const {
    std::vector<double> out;
    if (node.IsScalar()) {
      out.push_back(scalar<double>(node, what));
    } else if (node.IsSequence()) {
      for (const auto& item : node) out.push_back(scalar<double>(item, what));
    } else {
      fail(node, std::string(what) + " must be a number or a list");
    }
    if (out.empty()) fail(node, std::string(what) + " must not be empty");
    return out;
  }

  std::vector<std::string> words(const YAML::Node& node, const char* what) const {
    std::vector<std::string> out;
    if (node.IsScalar()) {
      out.push_back(node.Scalar());
    } else if (node.IsSequence()) {
      for (const auto& item : node) out.push_back(scalar<std::string>(item, what));
    } else {
      fail(node, std::string(what) + " must be a name or a list");
    }
    if (out.empty()) fail(node, std::string(what) + " must not be empty");
    return out;
  }

  void require_map(const YAML::Node& node, const char* what) const {
    if (!node.IsMap()) fail(node, std::string(what) + " must be a mapping");
  }
};

std::optional<Estimator> parse_estimator(const std::string& s) {
  for (Estimator e : {Estimator::proposed, Estimator::cp_baseline, Estimator::two_step})
    if (s == to_string(e)) return e;
  return std::nullopt;
}

std::optional<Detector> parse_detector(const std::string& s) {
  for (Detector d : {Detector::zf, Detector::mmse, Detector::ml})
    if (s == to_string(d)) return d;
  return std::nullopt;
}

void check_range(const CfoRange& r, const std::string& where) {
  if (!(r.lo_pi >= -1.0 && r.hi_pi <= 1.0 && r.lo_pi < r.hi_pi))
    throw ConfigError(where + "cfo range [" + format_number(r.lo_pi) + ", " +
                      format_number(r.hi_pi) + ") pi must satisfy -1 <= lo < hi <= 1");
}

void apply_system(SystemConfig& sys, const YAML::Node& node, const Source& src, const char* what) {
  src.require_map(node, what);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "N") sys.n = src.count(v, "N", 1);
    else if (key == "K") sys.k = src.count(v, "K", 1);
    else if (key == "L") sys.l = src.count(v, "L", 0);
    else if (key == "cp_len") sys.cp_len = src.count(v, "cp_len", 0);
    else if (key == "Es") sys.es = src.scalar<double>(v, "Es");
    else src.fail(kv.first, std::string("unknown key '") + key + "' in " + what);
  }
  try {
    sys.validate();
  } catch (const Error& e) {
    src.fail(node, e.what());
  }
}

void apply_experiment(RunConfig& cfg, const YAML::Node& node, const Source& src) {
  src.require_map(node, "experiment");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "snr_db") {
      cfg.snr_db = src.numbers(v, "snr_db");
    } else if (key == "runs") {
      cfg.runs = src.count(v, "runs", 1);
    } else if (key == "blocks") {
      cfg.blocks = src.count(v, "blocks", 1);
    } else if (key == "grid") {
      cfg.grid = src.count(v, "grid", 3);
    } else if (key == "refine_iters") {
      cfg.refine_iters = src.count(v, "refine_iters", 0);
    } else if (key == "seed") {
      cfg.seed = src.count(v, "seed", 0);
    } else if (key == "workers") {
      cfg.workers = src.count(v, "workers", 0);
    } else if (key == "ml_cap") {
      cfg.ml_cap = src.count(v, "ml_cap", 1);
    } else if (key == "cfo_mode") {
      const auto s = src.scalar<std::string>(v, "cfo_mode");
      if (s == "estimated") cfg.cfo_mode = CfoMode::estimated;
      else if (s == "perfect") cfg.cfo_mode = CfoMode::perfect;
      else src.fail(v, "cfo_mode must be 'estimated' or 'perfect'");
    } else if (key == "cfo_ranges") {
      if (!v.IsSequence() || v.size() == 0) src.fail(v, "cfo_ranges must be a list of [lo, hi] pairs");
      std::vector<CfoRange> ranges;
      for (const auto& item : v) {
        if (!item.IsSequence() || item.size() != 2) src.fail(item, "cfo range must be [lo, hi] in units of pi");
        CfoRange r{src.scalar<double>(item[0], "cfo range"), src.scalar<double>(item[1], "cfo range")};
        try {
          check_range(r, "");
        } catch (const ConfigError& e) {
          src.fail(item, e.what());
        }
        ranges.push_back(r);
      }
      cfg.cfo_ranges = ranges;
    } else if (key == "estimators") {
      std::vector<Estimator> list;
      for (const auto& s : src.words(v, "estimators")) {
        auto e = parse_estimator(s);
        if (!e) src.fail(v, "unknown estimator '" + s + "'");
        list.push_back(*e);
      }
      cfg.estimators = list;
    } else if (key == "equalizers") {
      std::vector<Detector> list;
      for (const auto& s : src.words(v, "equalizers")) {
        auto d = parse_detector(s);
        if (!d) src.fail(v, "unknown equalizer '" + s + "'");
        list.push_back(*d);
      }
      cfg.equalizers = list;
    } else {
      src.fail(kv.first, "unknown key '" + key + "' in experiment");
    }
  }
}

void apply_scan(ScanSettings& scan, const YAML::Node& node, const Source& src) {
  src.require_map(node, "scan");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "w0") {
      scan.w0 = src.scalar<double>(v, "w0");
    } else if (key == "snr_db") {
      if (v.IsNull()) scan.snr_db.reset();
      else scan.snr_db = src.scalar<double>(v, "snr_db");
    } else if (key == "covariance") {
      const auto s = src.scalar<std::string>(v, "covariance");
      if (s == "analytic") scan.empirical = false;
      else if (s == "empirical") scan.empirical = true;
      else src.fail(v, "covariance must be 'analytic' or 'empirical'");
    } else {
      src.fail(kv.first, "unknown key '" + key + "' in scan");
    }
  }
}

std::string join_numbers(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s + "]";
}

template <class T>
std::string join_names(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += std::string(i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

void write_system(std::ostream& os, const char* name, const SystemConfig& c) {
  os << name << ":\n  N: " << c.n << "\n  K: " << c.k << "\n  L: " << c.l
     << "\n  cp_len: " << c.cp_len << "\n  Es: " << format_number(c.es) << '\n';
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

void validate(const RunConfig& cfg) {
  try {
    cfg.system.validate();
    if (cfg.ml_system) cfg.ml_system->validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (cfg.snr_db.empty()) throw ConfigError("snr_db must not be empty");
  if (cfg.runs < 1) throw ConfigError("runs must be at least 1");
  if (cfg.blocks < 1) throw ConfigError("blocks must be at least 1");
  if (cfg.grid < 3) throw ConfigError("grid must be at least 3");
  if (cfg.cfo_ranges.empty()) throw ConfigError("cfo_ranges must not be empty");
  for (const auto& r : cfg.cfo_ranges) check_range(r, "");
  if (cfg.estimators.empty()) throw ConfigError("no estimator selected");
  if (cfg.equalizers.empty()) throw ConfigError("no equalizer selected");
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& cfg) {
  std::ofstream os(dir / "manifest.yaml");
  if (!os) throw Error(Errc::configuration, "cannot write " + (dir / "manifest.yaml").string());
  os << "manifest:\n  tool_version: \"" << kToolVersion << "\"\n  command: " << command
     << "\n  timestamp: \"" << utc_timestamp() << "\"\n  output_dir: \"" << dir.string()
     << "\"\n  seed: " << cfg.seed << "\n  plan_hashes:\n";
  for (const auto& r : cfg.cfo_ranges)
    os << "    " << r.label() << ": \"" << cfg.plan(r).hash() << "\"\n";
  os << to_yaml(cfg);
  if (!os) throw Error(Errc::configuration, "failed writing manifest");
}

void write_csv_file(const fs::path& path, const CurveResult& curve) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::configuration, "cannot write " + path.string());
  write_curve_csv(curve, os);
}

int cmd_mse(const RunConfig& cfg, const fs::path& dir, std::ostream& out) {
  for (const auto& r : cfg.cfo_ranges) cfg.plan(r).validate_for_mse();
  fs::create_directories(dir);
  write_manifest(dir, "mse", cfg);
  for (const auto& r : cfg.cfo_ranges) {
    for (const auto& curve : run_mse_experiment(cfg.plan(r))) {
      const fs::path path = dir / ("mse_" + curve.label + "_" + r.label() + ".csv");
      write_csv_file(path, curve);
      out << "wrote " << path.string() << '\n';
    }
  }
  return 0;
}

int cmd_ber(const RunConfig& cfg, const fs::path& dir, std::ostream& out) {
  for (const auto& r : cfg.cfo_ranges) cfg.plan(r).validate_for_ber();
  fs::create_directories(dir);
  write_manifest(dir, "ber", cfg);
  const bool tag = cfg.cfo_ranges.size() > 1;
  for (const auto& r : cfg.cfo_ranges) {
    for (const auto& curve : run_ber_experiment(cfg.plan(r))) {
      const fs::path path =
          dir / ("ber_" + curve.label + (tag ? "_" + r.label() : std::string()) + ".csv");
      write_csv_file(path, curve);
      out << "wrote " << path.string() << '\n';
    }
  }
  return 0;
}

int cmd_scan(const RunConfig& cfg, const fs::path& dir, std::ostream& out) {
  const SystemConfig& sys = cfg.system;
  const double w0 = cfg.scan.w0;
  if (!(w0 >= -kPi && w0 < kPi)) throw ConfigError("w0 must lie in [-pi, pi)");
  if (sys.null_space_dim() == 0)
    throw Error(Errc::no_null_space, "scan needs N - K - L >= 1");

  SystemConfig run_cfg = sys;
  // With E_s = 0 the SNR is taken relative to unit power.
  run_cfg.sigma2 = cfg.scan.snr_db ? snr_to_sigma2(*cfg.scan.snr_db, sys.es > 0 ? sys.es : 1.0)
                                   : 0.0;
  Rng rng(derive_seed(cfg.seed, 0, 0));
  const ChannelRealization ch = draw_channel(sys.l, rng);
  const Modem modem(run_cfg);

  fs::create_directories(dir);
  write_manifest(dir, "scan", cfg);

  CostScan scan;
  if (cfg.scan.empirical) {
    std::vector<TxBlock> blocks;
    blocks.reserve(cfg.blocks);
    const double amp = std::sqrt(sys.es / 2.0);
    std::uniform_int_distribution<int> bit(0, 1);
    for (std::size_t i = 1; i <= cfg.blocks; ++i) {
      CVector s(static_cast<Eigen::Index>(sys.k));
      for (auto& v : s) v = amp * cplx(bit(rng) ? -1.0 : 1.0, bit(rng) ? -1.0 : 1.0);
      blocks.push_back(modem.assemble(s, i));
    }
    CovarianceEstimate cov(sys.n);
    for (const RxBlock& y : modem.split_stream(modem.transmit_stream(blocks, ch, w0, rng)))
      cov.accumulate(y);
    scan = scan_cost(NullSubchirpCost(cov.matrix(), run_cfg, modem.dfnt()), cfg.grid);
  } else {
    const AnalyticCovariance r = analytic_covariance(ch, w0, run_cfg, modem.dfnt());
    scan = scan_cost(NullSubchirpCost(r, run_cfg, modem.dfnt()), cfg.grid);
  }

  const fs::path path = dir / "scan.csv";
  {
    std::ofstream os(path);
    if (!os) throw Error(Errc::configuration, "cannot write " + path.string());
    write_scan_csv(scan, os);
  }
  const std::size_t m = scan.argmin();
  out << "w0: " << format_number(w0) << '\n'
      << "argmin: " << format_number(scan.w[m]) << '\n'
      << "J(argmin): " << format_number(scan.cost[m]) << '\n'
      << "grid: " << scan.size() << '\n'
      << "wrote " << path.string() << '\n';
  return 0;
}

}  // namespace

void apply_yaml(RunConfig& cfg, const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  const Source src{source};
  if (root.IsNull()) return;
  src.require_map(root, "config");
  RunConfig next = cfg;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (key == "system") {
      apply_system(next.system, kv.second, src, "system");
    } else if (key == "ml_system") {
      if (kv.second.IsNull()) {
        next.ml_system.reset();
      } else {
        SystemConfig ml = next.ml_system.value_or(next.system);
        apply_system(ml, kv.second, src, "ml_system");
        next.ml_system = ml;
      }
    } else if (key == "experiment") {
      apply_experiment(next, kv.second, src);
    } else if (key == "scan") {
      apply_scan(next.scan, kv.second, src);
    } else if (key == "manifest") {
      // provenance block of a previous run
    } else {
      src.fail(kv.first, "unknown section '" + key + "'");
    }
  }
  cfg = next;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config not found: " + path);
  std::ostringstream text;
  text << is.rdbuf();
  apply_yaml(cfg, text.str(), path);
}

std::string to_yaml(const RunConfig& cfg) {
  std::ostringstream os;
  write_system(os, "system", cfg.system);
  if (cfg.ml_system) write_system(os, "ml_system", *cfg.ml_system);
  os << "experiment:\n  snr_db: " << join_numbers(cfg.snr_db) << "\n  runs: " << cfg.runs
     << "\n  blocks: " << cfg.blocks << "\n  grid: " << cfg.grid
     << "\n  refine_iters: " << cfg.refine_iters << "\n  seed: " << cfg.seed
     << "\n  workers: " << cfg.workers << "\n  cfo_ranges: [";
  for (std::size_t i = 0; i < cfg.cfo_ranges.size(); ++i)
    os << (i ? ", " : "") << '[' << format_number(cfg.cfo_ranges[i].lo_pi) << ", "
       << format_number(cfg.cfo_ranges[i].hi_pi) << ']';
  os << "]\n  estimators: " << join_names(cfg.estimators)
     << "\n  equalizers: " << join_names(cfg.equalizers)
     << "\n  cfo_mode: " << to_string(cfg.cfo_mode) << "\n  ml_cap: " << cfg.ml_cap << '\n';
  os << "scan:\n  w0: " << format_number(cfg.scan.w0) << "\n  snr_db: "
     << (cfg.scan.snr_db ? format_number(*cfg.scan.snr_db) : std::string("null"))
     << "\n  covariance: " << (cfg.scan.empirical ? "empirical" : "analytic") << '\n';
  return os.str();
}

std::string info_report(const RunConfig& cfg) {
  const SystemConfig& s = cfg.system;
  const std::size_t nulls = s.null_count();
  std::ostringstream os;
  os << "N: " << s.n << "\nK: " << s.k << "\nL: " << s.l << "\ncp_len: " << s.cp_len
     << "\nnull subchirps: " << nulls << '\n';
  if (s.identifiable())
    os << "identifiable: yes (" << nulls << " nulls ≥ " << s.l + 1 << ")\n";
  else
    os << "identifiable: NO (" << nulls << " nulls < " << s.l + 1 << ")\n";
  try {
    const Rational eff = spectral_efficiency(s.n, s.l);
    os << "spectral efficiency: " << eff.str() << " (" << format_number(eff.value()) << ")\n";
  } catch (const Error&) {
    os << "spectral efficiency: undefined (N <= L + 1)\n";
  }
  const std::uint64_t n2 = static_cast<std::uint64_t>(s.n) * s.n;
  os << "cost scan operations (N_c K N^2): " << cfg.grid << " * " << s.k << " * " << n2 << " = "
     << static_cast<std::uint64_t>(cfg.grid) * s.k * n2 << '\n'
     << "covariance operations (N_b N^2): " << cfg.blocks << " * " << n2 << " = "
     << static_cast<std::uint64_t>(cfg.blocks) * n2 << '\n';
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"OCDM null-subchirp CFO estimation and equalization simulator", "ocdm_sim"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  std::string config_path, preset_name = "default", out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs, blocks, grid, workers;
  std::optional<double> w0;
  std::vector<double> snr;
  std::vector<std::string> equalizers, estimators;
  bool empirical = false;

  app.add_option("--config", config_path, "YAML configuration file");
  app.add_option("--preset", preset_name, "Base parameters: default, fig1, fig2");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--snr", snr, "SNR points in dB (comma separated); scan takes one")->delimiter(',');
  app.add_option("--runs", runs, "Monte Carlo runs M")->check(CLI::PositiveNumber);
  app.add_option("--blocks", blocks, "Blocks per run N_b")->check(CLI::PositiveNumber);
  app.add_option("--grid", grid, "Search grid size N_c")->check(CLI::Range(3, 1 << 24));
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--equalizer", equalizers, "zf, mmse, ml (comma separated)");
  app.add_option("--estimator", estimators, "proposed, cp_baseline, two_step (comma separated)");
  app.add_option("--w0", w0, "CFO for scan, in [-pi, pi)");
  app.add_option("--workers", workers, "Worker threads (0 = all cores)");
  app.add_flag("--empirical", empirical, "scan: use a sample covariance of N_b blocks");

  auto* mse = app.add_subcommand("mse", "CFO estimator MSE versus SNR");
  auto* ber = app.add_subcommand("ber", "BER versus SNR per equalizer");
  auto* scan = app.add_subcommand("scan", "Cost function J(w) on the search grid");
  auto* info = app.add_subcommand("info", "Frame structure and complexity summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  RunConfig cfg;
  try {
    cfg = preset(preset_name);
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (seed) cfg.seed = *seed;
    if (runs) cfg.runs = *runs;
    if (blocks) cfg.blocks = *blocks;
    if (grid) cfg.grid = *grid;
    if (workers) cfg.workers = *workers;
    if (w0) cfg.scan.w0 = *w0;
    if (empirical) cfg.scan.empirical = true;
    if (!snr.empty()) {
      if (scan->parsed()) {
        if (snr.size() != 1) throw ConfigError("scan takes a single --snr value");
        cfg.scan.snr_db = snr.front();
      } else {
        cfg.snr_db = snr;
      }
    }
    if (!equalizers.empty()) {
      cfg.equalizers.clear();
      for (const auto& s : split_list(equalizers)) {
        auto d = parse_detector(s);
        if (!d) throw ConfigError("unknown equalizer '" + s + "'");
        cfg.equalizers.push_back(*d);
      }
    }
    if (!estimators.empty()) {
      cfg.estimators.clear();
      for (const auto& s : split_list(estimators)) {
        auto e = parse_estimator(s);
        if (!e) throw ConfigError("unknown estimator '" + s + "'");
        cfg.estimators.push_back(*e);
      }
    }
    validate(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (info->parsed()) {
      out << info_report(cfg);
      return 0;
    }
    const fs::path dir(out_dir);
    if (mse->parsed()) return cmd_mse(cfg, dir, out);
    if (ber->parsed()) return cmd_ber(cfg, dir, out);
    if (scan->parsed()) return cmd_scan(cfg, dir, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 3;
}

}  // namespace ocdm::cli
