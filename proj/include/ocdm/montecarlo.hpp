#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ocdm/cfo_estimator.hpp"
#include "ocdm/equalizers.hpp"
#include "ocdm/waveform.hpp"

namespace ocdm {

enum class Estimator { proposed, cp_baseline, two_step };
enum class Detector { zf, mmse, ml };
enum class CfoMode { estimated, perfect };

const char* to_string(Estimator e);
const char* to_string(Detector d);
const char* to_string(CfoMode m);

/// Half-open CFO interval [lo, hi), stored in units of pi.
struct CfoRange {
  double lo_pi = -1.0;
  double hi_pi = 1.0;

  double lo() const noexcept { return lo_pi * kPi; }
  double hi() const noexcept { return hi_pi * kPi; }
  /// File-name friendly tag: "full", "pm0.05pi" or "-0.1pi_0.3pi".
  std::string label() const;
};

struct ExperimentPlan {
  SystemConfig cfg;  // sigma2 is derived per SNR point
  std::vector<double> snr_db{0, 5, 10, 15, 20, 25, 30};
  std::size_t runs = 100;
  std::size_t blocks = 1000;
  CfoRange cfo_range;
  std::vector<Estimator> estimators{Estimator::proposed};
  std::vector<Detector> detectors{Detector::zf, Detector::mmse};
  CfoMode cfo_mode = CfoMode::estimated;
  std::size_t grid_size = kDefaultGridSize;
  std::size_t refine_iters = kDefaultRefineIters;
  /// Frame used for the ML curve when set; otherwise ML runs on cfg.
  std::optional<SystemConfig> ml_cfg;
  std::uint64_t ml_cap = kDefaultMlCap;
  /// Use these taps in every run instead of drawing a Rayleigh channel
  /// (main frame only; the ML frame always draws).
  std::optional<std::vector<cplx>> fixed_taps;
  std::uint64_t master_seed = 1;
  /// Worker threads; 0 selects the hardware concurrency. Results do not depend on it.
  std::size_t workers = 1;

  void validate_for_mse() const;
  void validate_for_ber() const;
  /// Canonical one-line-per-field text; hashed into CurveResult::plan_hash.
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;
};

struct CurvePoint {
  double snr_db = 0.0;
  double value = 0.0;
  double std_error = 0.0;
};

struct CurveResult {
  std::string label;  // estimator or detector name
  std::string plan_hash;
  std::vector<CurvePoint> points;
};

/// SNR = E_s / sigma^2.
double snr_to_sigma2(double snr_db, double es);

/// Per-task seed, a mix of (master_seed, run_index, snr_index).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index,
                          std::uint64_t snr_index);

/// Wrapped squared CFO error, averaged over runs. One curve per estimator,
/// in plan order.
std::vector<CurveResult> run_mse_experiment(const ExperimentPlan& plan);

/// Bit error rate after CFO compensation and equalization. One curve per
/// detector, in plan order.
std::vector<CurveResult> run_ber_experiment(const ExperimentPlan& plan);

struct DiversityEstimate {
  double order = 0.0;      // -slope of log10(BER) vs SNR_dB / 10
  double std_error = 0.0;  // propagated from the per-point standard errors
  std::size_t points = 0;
};

DiversityEstimate estimate_diversity_slope(const CurveResult& curve, double lo_db, double hi_db);

struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// (N - L - 1) / (N + L), reduced.
Rational spectral_efficiency(std::size_t n, std::size_t l);

/// Header "snr_db,value,std_error" then one line per point.
void write_curve_csv(const CurveResult& curve, std::ostream& os);

}  // namespace ocdm
