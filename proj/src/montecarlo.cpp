#include "ocdm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "ocdm/io.hpp"

namespace ocdm {

const char* to_string(Estimator e) {
  switch (e) {
    case Estimator::proposed: return "proposed";
    case Estimator::cp_baseline: return "cp_baseline";
    case Estimator::two_step: return "two_step";
  }
  return "?";
}

const char* to_string(Detector d) {
  switch (d) {
    case Detector::zf: return "zf";
    case Detector::mmse: return "mmse";
    case Detector::ml: return "ml";
  }
  return "?";
}

const char* to_string(CfoMode m) {
  return m == CfoMode::perfect ? "perfect" : "estimated";
}

std::string CfoRange::label() const {
  if (lo_pi == -1.0 && hi_pi == 1.0) return "full";
  if (lo_pi == -hi_pi) return "pm" + format_number(hi_pi) + "pi";
  return format_number(lo_pi) + "pi_" + format_number(hi_pi) + "pi";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(task) for task in [0, count). Each task writes only its own slot,
// so results are independent of the worker count.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t t = 0; t < count; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < count; t = next++) {
        try {
          fn(t);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::uint8_t> random_bits(std::size_t count, Rng& rng) {
  std::vector<std::uint8_t> bits(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
  }
  return bits;
}

double draw_cfo(const CfoRange& range, Rng& rng) {
  std::uniform_real_distribution<double> u(range.lo(), range.hi());
  double w0 = u(rng);
  // uniform_real_distribution may round up to hi.
  if (w0 >= range.hi()) w0 = range.lo();
  return w0;
}

CVector to_vector(const std::vector<cplx>& v) {
  return Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

CurvePoint summarize(double snr_db, std::span<const double> samples) {
  const double m = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / m;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double se = samples.size() > 1 ? std::sqrt(ss / (m - 1.0) / m) : 0.0;
  return CurvePoint{snr_db, mean, se};
}

bool contains(const std::vector<Estimator>& v, Estimator e) {
  return std::find(v.begin(), v.end(), e) != v.end();
}

bool contains(const std::vector<Detector>& v, Detector d) {
  return std::find(v.begin(), v.end(), d) != v.end();
}

void validate_common(const ExperimentPlan& plan) {
  auto fail = [](const std::string& msg) { throw Error(Errc::configuration, msg); };
  plan.cfg.validate();
  if (plan.snr_db.empty()) fail("SNR grid is empty");
  if (plan.runs < 1) fail("runs must be >= 1");
  if (plan.blocks < 1) fail("blocks must be >= 1");
  if (!(plan.cfo_range.lo_pi >= -1.0 && plan.cfo_range.hi_pi <= 1.0 &&
        plan.cfo_range.lo_pi < plan.cfo_range.hi_pi)) {
    fail("CFO range must be a non-empty subinterval of [-pi, pi)");
  }
  if (plan.grid_size < 2) fail("grid size must be >= 2");
  if (plan.fixed_taps && plan.fixed_taps->size() != plan.cfg.l + 1) {
    fail("fixed channel needs L + 1 taps");
  }
}

ChannelRealization run_channel(const ExperimentPlan& plan, std::size_t order, Rng& rng) {
  if (plan.fixed_taps) return ChannelRealization{*plan.fixed_taps};
  return draw_channel(order, rng);
}

void require_identifiable(const SystemConfig& cfg) {
  if (!cfg.identifiable()) {
    throw Error(Errc::configuration,
                "null-subchirp estimator needs N - K >= L + 1 (N=" + std::to_string(cfg.n) +
                    ", K=" + std::to_string(cfg.k) + ", L=" + std::to_string(cfg.l) + ")");
  }
}

}  // namespace

void ExperimentPlan::validate_for_mse() const {
  validate_common(*this);
  if (estimators.empty()) throw Error(Errc::configuration, "no estimator selected");
  if (contains(estimators, Estimator::proposed) || contains(estimators, Estimator::two_step)) {
    require_identifiable(cfg);
  }
  if ((contains(estimators, Estimator::cp_baseline) || contains(estimators, Estimator::two_step)) &&
      cfg.cp_len <= cfg.l) {
    throw Error(Errc::configuration, "CP-based estimators need cp_len > L (excess CP)");
  }
}

void ExperimentPlan::validate_for_ber() const {
  validate_common(*this);
  if (detectors.empty()) throw Error(Errc::configuration, "no equalizer selected");
  if (!(cfg.es > 0.0)) throw Error(Errc::configuration, "BER runs need Es > 0");
  if (ml_cfg) {
    ml_cfg->validate();
    if (!(ml_cfg->es > 0.0)) throw Error(Errc::configuration, "BER runs need Es > 0");
  }
  if (cfo_mode == CfoMode::estimated) {
    require_identifiable(cfg);
    if (ml_cfg && contains(detectors, Detector::ml)) require_identifiable(*ml_cfg);
  }
  if (contains(detectors, Detector::ml)) {
    const SystemConfig& frame = ml_cfg ? *ml_cfg : cfg;
    if (search_size(4, frame.k) > ml_cap) {
      throw Error(Errc::combinatorial_blowup,
                  "ML detection with K=" + std::to_string(frame.k) + " QPSK needs 4^" +
                      std::to_string(frame.k) + " candidates, above the cap of " +
                      std::to_string(ml_cap) + "; reduce K or configure ml_system");
    }
  }
}

std::string ExperimentPlan::canonical() const {
  std::ostringstream os;
  auto frame = [&](const char* prefix, const SystemConfig& c) {
    os << prefix << "N=" << c.n << '\n'
       << prefix << "K=" << c.k << '\n'
       << prefix << "L=" << c.l << '\n'
       << prefix << "cp_len=" << c.cp_len << '\n'
       << prefix << "Es=" << format_number(c.es) << '\n';
  };
  frame("", cfg);
  os << "snr_db=";
  for (std::size_t i = 0; i < snr_db.size(); ++i) os << (i ? "," : "") << format_number(snr_db[i]);
  os << "\nruns=" << runs << "\nblocks=" << blocks << "\ncfo_range="
     << format_number(cfo_range.lo_pi) << ',' << format_number(cfo_range.hi_pi) << "\nestimators=";
  for (std::size_t i = 0; i < estimators.size(); ++i) os << (i ? "," : "") << to_string(estimators[i]);
  os << "\nequalizers=";
  for (std::size_t i = 0; i < detectors.size(); ++i) os << (i ? "," : "") << to_string(detectors[i]);
  os << "\ncfo_mode=" << to_string(cfo_mode) << "\ngrid=" << grid_size
     << "\nrefine_iters=" << refine_iters << "\nml_cap=" << ml_cap << '\n';
  if (ml_cfg) frame("ml_", *ml_cfg);
  if (fixed_taps) {
    os << "taps=";
    for (std::size_t i = 0; i < fixed_taps->size(); ++i) {
      const cplx t = (*fixed_taps)[i];
      os << (i ? "," : "") << format_number(t.real()) << '+' << format_number(t.imag()) << 'j';
    }
    os << '\n';
  }
  os << "seed=" << master_seed << '\n';
  return os.str();
}

std::string ExperimentPlan::hash() const { return fnv1a_hex(canonical()); }

double snr_to_sigma2(double snr_db, double es) { return es * std::pow(10.0, -snr_db / 10.0); }

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index,
                          std::uint64_t snr_index) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ run_index);
  return splitmix64(h ^ (snr_index * 0xd6e8feb86659fd93ull));
}

std::vector<CurveResult> run_mse_experiment(const ExperimentPlan& plan) {
  plan.validate_for_mse();
  const std::size_t snr_count = plan.snr_db.size();
  const std::size_t runs = plan.runs;
  const std::size_t est_count = plan.estimators.size();

  std::vector<Modem> modems;
  modems.reserve(snr_count);
  for (double snr : plan.snr_db) {
    SystemConfig c = plan.cfg;
    c.sigma2 = snr_to_sigma2(snr, c.es);
    modems.emplace_back(c);
  }

  // errors[(s * runs + m) * est_count + e]
  std::vector<double> errors(snr_count * runs * est_count, 0.0);
  parallel_for(snr_count * runs, plan.workers, [&](std::size_t task) {
    const std::size_t s = task / runs;
    const std::size_t m = task % runs;
    const Modem& modem = modems[s];
    const SystemConfig& cfg = modem.config();
    Rng rng(derive_seed(plan.master_seed, m, s));

    const ChannelRealization ch = run_channel(plan, cfg.l, rng);
    const double w0 = draw_cfo(plan.cfo_range, rng);

    std::vector<TxBlock> tx;
    tx.reserve(plan.blocks);
    for (std::size_t i = 0; i < plan.blocks; ++i) {
      const auto symbols = map_qpsk(random_bits(2 * cfg.k, rng), cfg.es);
      tx.push_back(modem.assemble(to_vector(symbols), i + 1));
    }
    const std::vector<cplx> stream = modem.transmit_stream(tx, ch, w0, rng);

    std::optional<NullSubchirpCost> cost;
    if (contains(plan.estimators, Estimator::proposed) ||
        contains(plan.estimators, Estimator::two_step)) {
      CovarianceEstimate acc(cfg.n);
      for (const RxBlock& y : modem.split_stream(stream)) acc.accumulate(y);
      cost.emplace(acc.matrix(), cfg, modem.dfnt());
    }

    for (std::size_t e = 0; e < est_count; ++e) {
      CfoEstimate est;
      switch (plan.estimators[e]) {
        case Estimator::proposed:
          est = estimate_cfo(*cost, plan.grid_size, plan.refine_iters);
          break;
        case Estimator::cp_baseline:
          est = cp_baseline_estimate(stream, cfg);
          break;
        case Estimator::two_step:
          est = two_step_estimate(*cost, stream, cfg, plan.grid_size, plan.refine_iters);
          break;
      }
      const double err = wrap_error(est.w_hat - w0);
      errors[task * est_count + e] = err * err;
    }
  });

  const std::string hash = plan.hash();
  std::vector<CurveResult> curves;
  for (std::size_t e = 0; e < est_count; ++e) {
    CurveResult curve{to_string(plan.estimators[e]), hash, {}};
    std::vector<double> samples(runs);
    for (std::size_t s = 0; s < snr_count; ++s) {
      for (std::size_t m = 0; m < runs; ++m) samples[m] = errors[(s * runs + m) * est_count + e];
      curve.points.push_back(summarize(plan.snr_db[s], samples));
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

namespace {

// Bit errors of one Monte Carlo run for each detector in `detectors`.
std::vector<std::size_t> ber_run(const Modem& modem, const ExperimentPlan& plan,
                                 const std::vector<Detector>& detectors,
                                 const std::vector<cplx>* fixed, Rng& rng) {
  const SystemConfig& cfg = modem.config();
  const ChannelRealization ch = fixed ? ChannelRealization{*fixed} : draw_channel(cfg.l, rng);
  const double w0 = draw_cfo(plan.cfo_range, rng);

  std::vector<std::vector<std::uint8_t>> bits(plan.blocks);
  std::vector<RxBlock> rx(plan.blocks);
  for (std::size_t i = 0; i < plan.blocks; ++i) {
    bits[i] = random_bits(2 * cfg.k, rng);
    const TxBlock tx = modem.assemble(to_vector(map_qpsk(bits[i], cfg.es)), i + 1);
    rx[i] = modem.propagate(tx, ch, w0, rng);
  }

  double w_hat = w0;
  if (plan.cfo_mode == CfoMode::estimated) {
    CovarianceEstimate acc(cfg.n);
    for (const RxBlock& y : rx) acc.accumulate(y);
    w_hat = estimate_cfo(acc.matrix(), cfg, modem.dfnt(), plan.grid_size, plan.refine_iters).w_hat;
  }

  const CompositeChannel comp = build_composite(ch, cfg, modem.dfnt());
  std::vector<Equalizer> linear(detectors.size());
  for (std::size_t d = 0; d < detectors.size(); ++d) {
    if (detectors[d] == Detector::zf) linear[d] = zf(comp.b);
    if (detectors[d] == Detector::mmse) linear[d] = mmse(comp.b, cfg.sigma2, cfg.es);
  }
  const std::vector<cplx> constellation = qpsk_constellation(cfg.es);

  std::vector<std::size_t> errors(detectors.size(), 0);
  for (std::size_t i = 0; i < plan.blocks; ++i) {
    const ComplexBlock r = modem.compensate(rx[i], w_hat);
    for (std::size_t d = 0; d < detectors.size(); ++d) {
      const CVector s_hat = detectors[d] == Detector::ml
                                ? ml_detect(r, comp.b, constellation, plan.ml_cap)
                                : equalize(linear[d], r);
      const auto decided =
          demap_qpsk({s_hat.data(), static_cast<std::size_t>(s_hat.size())});
      for (std::size_t b = 0; b < decided.size(); ++b) errors[d] += decided[b] != bits[i][b];
    }
  }
  return errors;
}

}  // namespace

std::vector<CurveResult> run_ber_experiment(const ExperimentPlan& plan) {
  plan.validate_for_ber();
  const std::size_t snr_count = plan.snr_db.size();
  const std::size_t runs = plan.runs;

  struct Group {
    SystemConfig cfg;
    std::vector<Detector> detectors;
    std::uint64_t salt;
    const std::vector<cplx>* fixed;
  };
  std::vector<Group> groups;
  Group main{plan.cfg, {}, 0, plan.fixed_taps ? &*plan.fixed_taps : nullptr};
  for (Detector d : plan.detectors) {
    if (!(d == Detector::ml && plan.ml_cfg)) main.detectors.push_back(d);
  }
  if (!main.detectors.empty()) groups.push_back(main);
  if (plan.ml_cfg && contains(plan.detectors, Detector::ml)) {
    groups.push_back(Group{*plan.ml_cfg, {Detector::ml}, 0x6d6c, nullptr});
  }

  std::vector<CurveResult> by_detector(plan.detectors.size());
  const std::string hash = plan.hash();
  for (const Group& g : groups) {
    std::vector<Modem> modems;
    modems.reserve(snr_count);
    for (double snr : plan.snr_db) {
      SystemConfig c = g.cfg;
      c.sigma2 = snr_to_sigma2(snr, c.es);
      modems.emplace_back(c);
    }
    const std::size_t det_count = g.detectors.size();
    const double bits_per_run = static_cast<double>(plan.blocks * 2 * g.cfg.k);

    // ber[(s * runs + m) * det_count + d]
    std::vector<double> ber(snr_count * runs * det_count, 0.0);
    parallel_for(snr_count * runs, plan.workers, [&](std::size_t task) {
      const std::size_t s = task / runs;
      const std::size_t m = task % runs;
      Rng rng(derive_seed(plan.master_seed ^ g.salt, m, s));
      const auto errors = ber_run(modems[s], plan, g.detectors, g.fixed, rng);
      for (std::size_t d = 0; d < det_count; ++d) {
        ber[task * det_count + d] = static_cast<double>(errors[d]) / bits_per_run;
      }
    });

    for (std::size_t d = 0; d < det_count; ++d) {
      CurveResult curve{to_string(g.detectors[d]), hash, {}};
      std::vector<double> samples(runs);
      for (std::size_t s = 0; s < snr_count; ++s) {
        for (std::size_t m = 0; m < runs; ++m) samples[m] = ber[(s * runs + m) * det_count + d];
        curve.points.push_back(summarize(plan.snr_db[s], samples));
      }
      const auto slot = static_cast<std::size_t>(
          std::find(plan.detectors.begin(), plan.detectors.end(), g.detectors[d]) -
          plan.detectors.begin());
      by_detector[slot] = std::move(curve);
    }
  }
  return by_detector;
}

DiversityEstimate estimate_diversity_slope(const CurveResult& curve, double lo_db, double hi_db) {
  std::vector<const CurvePoint*> pts;
  for (const CurvePoint& p : curve.points) {
    if (p.snr_db >= lo_db && p.snr_db <= hi_db && p.value > 0.0) pts.push_back(&p);
  }
  if (pts.size() < 3) {
    throw Error(Errc::undersampled, "diversity slope needs >= 3 nonzero BER points in [" +
                                        format_number(lo_db) + ", " + format_number(hi_db) +
                                        "] dB, got " + std::to_string(pts.size()));
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const CurvePoint* p : pts) {
    mean_x += p->snr_db / 10.0;
    mean_y += std::log10(p->value);
  }
  mean_x /= static_cast<double>(pts.size());
  mean_y /= static_cast<double>(pts.size());

  double sxx = 0.0;
  double sxy = 0.0;
  for (const CurvePoint* p : pts) {
    const double dx = p->snr_db / 10.0 - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log10(p->value) - mean_y);
  }
  // Delta method: var(log10 v) ~ (se / (v ln 10))^2.
  double var = 0.0;
  for (const CurvePoint* p : pts) {
    const double c = (p->snr_db / 10.0 - mean_x) / sxx;
    const double sd_log = p->std_error / (p->value * std::log(10.0));
    var += c * c * sd_log * sd_log;
  }
  return DiversityEstimate{-sxy / sxx, std::sqrt(var), pts.size()};
}

Rational spectral_efficiency(std::size_t n, std::size_t l) {
  if (n <= l + 1) {
    throw Error(Errc::degenerate_configuration,
                "spectral efficiency needs N > L + 1 (N=" + std::to_string(n) +
                    ", L=" + std::to_string(l) + ")");
  }
  const auto num = static_cast<long long>(n - l - 1);
  const auto den = static_cast<long long>(n + l);
  const long long g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

void write_curve_csv(const CurveResult& curve, std::ostream& os) {
  os << "snr_db,value,std_error\n";
  for (const CurvePoint& p : curve.points) {
    os << format_number(p.snr_db) << ',' << format_number(p.value) << ','
       << format_number(p.std_error) << '\n';
  }
}

}  // namespace ocdm
