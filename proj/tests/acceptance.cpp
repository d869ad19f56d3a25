// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ocdm/cli.hpp"
#include "ocdm/io.hpp"
#include "ocdm/montecarlo.hpp"

using namespace ocdm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double uniform_cfo(Rng& rng) { return std::uniform_real_distribution<double>(-kPi, kPi)(rng); }

Outcome transform_algebra() {
  Rng rng(101);
  std::normal_distribution<double> g(0.0, 1.0);
  double unitary = 0.0, commute = 0.0;
  for (std::size_t n = 1; n <= 64; ++n) {
    const auto phi = DfntMatrix::build(n);
    const CMatrix& p = phi.matrix();
    unitary = std::max(unitary, max_abs(p * p.adjoint() - CMatrix::Identity(n, n)));
    for (int c = 0; c < 20; ++c) {
      const std::size_t taps = 1 + rng() % n;
      std::vector<cplx> h(taps);
      for (auto& t : h) t = cplx(g(rng), g(rng));
      const CMatrix hm = CirculantChannel::from_taps(h, n).matrix();
      commute = std::max(commute, max_abs(hm * phi.adjoint() - phi.adjoint() * hm));
    }
  }
  return {unitary < 1e-12 && commute < 1e-10,
          "max |PP^H - I| = " + sci(unitary) + ", max |HP^H - P^H H| = " + sci(commute)};
}

Outcome noise_floor() {
  const auto phi = DfntMatrix::build(16);
  SystemConfig cfg;
  cfg.sigma2 = 1.0;
  const double floor = cfg.sigma2 * static_cast<double>(cfg.n - cfg.k - cfg.l);
  Rng rng(202);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const ChannelRealization ch = draw_channel(cfg.l, rng);
    const double w0 = uniform_cfo(rng);
    const NullSubchirpCost j(analytic_covariance(ch, w0, cfg, phi), cfg, phi);
    worst = std::max(worst, std::abs(j(w0) - floor) / floor);
  }
  return {worst < 1e-9, "max relative deviation " + sci(worst)};
}

Outcome identifiability() {
  const auto phi = DfntMatrix::build(16);
  const SystemConfig cfg;
  const std::size_t grid = 4096;
  Rng rng(303);
  int good = 0;
  double worst_ratio = 1e300;
  for (int run = 0; run < 500; ++run) {
    const ChannelRealization ch = draw_channel(cfg.l, rng);
    const double w0 = uniform_cfo(rng);
    const CostScan scan = scan_cost(NullSubchirpCost(analytic_covariance(ch, w0, cfg, phi), cfg, phi), grid);
    const double step = scan.grid_step() * (1.0 + 1e-9);
    double mean = 0.0;
    for (double v : scan.cost) mean += v;
    mean /= static_cast<double>(grid);

    bool ok = std::abs(wrap_error(scan.w[scan.argmin()] - w0)) <= step;
    for (std::size_t m = 0; m < grid; ++m) {
      if (std::abs(wrap_error(scan.w[m] - w0)) <= step) continue;
      worst_ratio = std::min(worst_ratio, scan.cost[m] / mean);
      if (scan.cost[m] < 1e-6 * mean) ok = false;
    }
    good += ok ? 1 : 0;
  }
  return {good == 500, std::to_string(good) + "/500 runs unique at w0; lowest J/mean off the true cell " +
                           sci(worst_ratio)};
}

struct MseCurves {
  CurveResult proposed_narrow, cp_narrow, proposed_full, cp_full;
  double seconds = 0.0;
};

MseCurves mse_curves() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentPlan plan;
  plan.cfg.cp_len = 4;
  plan.snr_db = {0, 5, 10, 15, 20, 25, 30};
  plan.runs = 100;
  plan.blocks = 1000;
  plan.estimators = {Estimator::proposed, Estimator::cp_baseline};
  plan.workers = 0;
  MseCurves out;
  plan.cfo_range = CfoRange{-0.05, 0.05};
  auto narrow = run_mse_experiment(plan);
  plan.cfo_range = CfoRange{-1.0, 1.0};
  auto full = run_mse_experiment(plan);
  out.proposed_narrow = narrow[0];
  out.cp_narrow = narrow[1];
  out.proposed_full = full[0];
  out.cp_full = full[1];
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

double at(const CurveResult& c, double snr) {
  for (const CurvePoint& p : c.points)
    if (p.snr_db == snr) return p.value;
  throw std::logic_error("missing SNR point");
}

Outcome full_range_mse(const MseCurves& m) {
  const double m10 = at(m.proposed_full, 10), m30 = at(m.proposed_full, 30);
  bool ok = m30 < m10 / 10.0;
  double worst = 1.0;
  for (double snr : {10.0, 15.0, 20.0, 25.0, 30.0}) {
    const double a = at(m.proposed_narrow, snr), b = at(m.proposed_full, snr);
    const double ratio = std::max(a, b) / std::min(a, b);
    worst = std::max(worst, ratio);
    ok = ok && ratio <= 3.0;
  }
  ok = ok && m.seconds < 900.0;
  return {ok, "MSE(10 dB) = " + sci(m10) + ", MSE(30 dB) = " + sci(m30) +
                  ", worst narrow/full ratio at >= 10 dB " + sci(worst) + ", " + sci(m.seconds) + " s"};
}

Outcome cp_ambiguity(const MseCurves& m) {
  const double c10 = at(m.cp_full, 10), c30 = at(m.cp_full, 30);
  bool ok = c30 >= 0.1 * c10;
  std::string narrow;
  for (double snr : {0.0, 5.0, 10.0}) {
    const double cp = at(m.cp_narrow, snr), prop = at(m.proposed_narrow, snr);
    ok = ok && cp <= prop;
    narrow += " " + format_number(snr) + " dB: " + sci(cp) + " vs " + sci(prop) + ";";
  }
  ok = ok && m.seconds < 900.0;
  return {ok, "full range cp MSE(10 dB) = " + sci(c10) + ", MSE(30 dB) = " + sci(c30) +
                  "; narrow range cp vs proposed:" + narrow};
}

Outcome diversity() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentPlan nsc;
  nsc.snr_db = {15, 20, 25, 30};
  nsc.runs = 50000;
  nsc.blocks = 40;
  nsc.cfo_mode = CfoMode::perfect;
  nsc.detectors = {Detector::zf, Detector::mmse, Detector::ml};
  nsc.ml_cfg = SystemConfig{8, 4, 2, 2, 1.0, 0.0};
  nsc.workers = 0;
  const auto curves = run_ber_experiment(nsc);

  ExperimentPlan plain = nsc;
  plain.cfg.k = plain.cfg.n;
  plain.detectors = {Detector::mmse};
  plain.ml_cfg.reset();
  const auto plain_curve = run_ber_experiment(plain)[0];
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto zf = estimate_diversity_slope(curves[0], 15, 30);
  const auto mm = estimate_diversity_slope(curves[1], 15, 30);
  const auto ml = estimate_diversity_slope(curves[2], 15, 30);
  const auto pl = estimate_diversity_slope(plain_curve, 15, 30);

  auto separated = [&](const DiversityEstimate& a) {
    return std::abs(a.order - pl.order) > 3.0 * std::hypot(a.std_error, pl.std_error);
  };
  const bool ok = zf.order >= 2.0 && mm.order >= 2.0 && ml.order >= 2.0 && pl.order <= 1.5 &&
                  separated(zf) && separated(mm) && separated(ml) && seconds < 1800.0;
  auto show = [](const char* name, const DiversityEstimate& d) {
    return std::string(name) + " " + sci(d.order) + " +/- " + sci(d.std_error);
  };
  return {ok, show("nsc-zf", zf) + ", " + show("nsc-mmse", mm) + ", " + show("ml(N=8,K=4)", ml) +
                  ", " + show("plain-mmse", pl) + " (need >= 2.0, plain <= 1.5), " + sci(seconds) +
                  " s"};
}

Outcome oracle_equivalences() {
  std::string detail;
  bool ok = true;

  {
    SystemConfig cfg;
    cfg.cp_len = 3;
    const Modem modem(cfg);
    Rng rng(707);
    double worst = 0.0;
    for (int batch = 0; batch < 10; ++batch) {
      const ChannelRealization ch = draw_channel(cfg.l, rng);
      const double w0 = uniform_cfo(rng);
      std::vector<oracle::Vec> x;
      std::vector<TxBlock> tx;
      for (std::size_t i = 1; i <= 100; ++i) {
        std::vector<std::uint8_t> bits(2 * cfg.k);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
        const auto s = map_qpsk(bits, cfg.es);
        tx.push_back(modem.assemble(Eigen::Map<const CVector>(s.data(), 12), i));
        x.push_back(tx.back().samples);
      }
      const auto ref = oracle::stream_link(x, ch.taps, w0, cfg.cp_len);
      for (std::size_t i = 0; i < tx.size(); ++i)
        worst = std::max(worst, (modem.propagate(tx[i], ch, w0, rng).samples - ref[i]).cwiseAbs().maxCoeff());
    }
    ok = ok && worst < 1e-10;
    detail += "per-block vs stream " + sci(worst) + " over 1000 blocks";
  }

  {
    SystemConfig cfg{6, 4, 1, 1, 1.0, 0.0};
    const auto phi = DfntMatrix::build(6);
    const auto alphabet = qpsk_constellation();
    Rng rng(708);
    std::normal_distribution<double> g(0.0, 0.5);
    int mismatch = 0;
    for (int t = 0; t < 1000; ++t) {
      const CMatrix b = build_composite(draw_channel(1, rng), cfg, phi).b;
      CVector s(4);
      for (auto& v : s) v = alphabet[rng() % 4];
      CVector r = b * s;
      for (auto& v : r) v += cplx(g(rng), g(rng));
      mismatch += ml_detect(r, b, alphabet) != oracle::brute_force_ml(r, b, alphabet);
    }
    ok = ok && mismatch == 0;
    detail += "; ml vs brute force " + std::to_string(mismatch) + " mismatches in 1000";
  }

  {
    ExperimentPlan p;
    p.cfg = SystemConfig{16, 16, 0, 0, 1.0, 0.0};
    p.fixed_taps = std::vector<cplx>{1.0};
    p.cfo_mode = CfoMode::perfect;
    p.snr_db = {0, 2, 4, 6, 8};
    p.runs = 400;
    p.blocks = 50;
    p.detectors = {Detector::zf};
    p.master_seed = 709;
    double worst = 0.0;
    const CurveResult curve = run_ber_experiment(p)[0];
    for (const CurvePoint& pt : curve.points)
      worst = std::max(worst, std::abs(pt.value - oracle::qpsk_awgn_ber(pt.snr_db)) / pt.std_error);
    ok = ok && worst < 3.0;
    detail += "; AWGN BER worst deviation " + sci(worst) + " SE";
  }
  return {ok, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ocdm_sim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream sink;
  return cli::run(static_cast<int>(argv.size()), argv.data(), sink, sink);
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "ocdm_acceptance_determinism";
  fs::remove_all(root);
  bool ok = true;
  std::size_t compared = 0;

  auto same_csvs = [&](const fs::path& a, const fs::path& b) {
    for (const auto& e : fs::directory_iterator(a)) {
      if (e.path().extension() != ".csv") continue;
      ++compared;
      if (!fs::exists(b / e.path().filename()) || slurp(e.path()) != slurp(b / e.path().filename()))
        ok = false;
    }
  };

  const std::vector<std::string> mse{"mse", "--preset", "fig1", "--runs", "6", "--blocks", "200",
                                     "--snr", "0,15,30", "--seed", "11"};
  const std::vector<std::string> ber{"ber", "--preset", "fig2", "--runs", "6", "--blocks", "30",
                                     "--snr", "5,25", "--seed", "12"};
  for (const auto& [name, base] : {std::pair{"mse", mse}, std::pair{"ber", ber}}) {
    const fs::path one = root / (std::string(name) + "_w1"), four = root / (std::string(name) + "_w4"),
                   again = root / (std::string(name) + "_manifest");
    auto a = base, b = base;
    a.insert(a.end(), {"--workers", "1", "--out", one.string()});
    b.insert(b.end(), {"--workers", "4", "--out", four.string()});
    ok = ok && cli(a) == 0 && cli(b) == 0;
    ok = ok && cli({name, "--config", (one / "manifest.yaml").string(), "--workers", "3", "--out",
                    again.string()}) == 0;
    same_csvs(one, four);
    same_csvs(one, again);
  }
  fs::remove_all(root);
  return {ok && compared == 2 * (9 + 3), std::to_string(compared) +
                                             " CSV comparisons (1 vs 4 workers, rerun from manifest)"};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << o.detail
              << " [" << sci(s) << " s]" << std::endl;
  };

  report(1, "transform algebra", [] {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = transform_algebra();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.pass = o.pass && s < 10.0;
    return o;
  });
  report(2, "noise-floor identity", [] {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = noise_floor();
    o.pass = o.pass && std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0;
    return o;
  });
  report(3, "identifiability", [] {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = identifiability();
    o.pass = o.pass && std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 120.0;
    return o;
  });
  MseCurves curves;
  bool have_curves = true;
  try {
    curves = mse_curves();
  } catch (const std::exception& e) {
    have_curves = false;
    std::cout << "MSE experiment failed: " << e.what() << std::endl;
  }
  report(4, "full-range MSE", [&] {
    return have_curves ? full_range_mse(curves) : Outcome{false, "no MSE curves"};
  });
  report(5, "CP-baseline ambiguity", [&] {
    return have_curves ? cp_ambiguity(curves) : Outcome{false, "no MSE curves"};
  });
  report(6, "diversity", diversity);
  report(7, "oracle equivalences", oracle_equivalences);
  report(8, "determinism", determinism);

  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
