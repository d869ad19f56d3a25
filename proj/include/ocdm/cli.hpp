#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ocdm/montecarlo.hpp"

namespace ocdm::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Invalid or unreadable configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanSettings {
  double w0 = 0.3;
  std::optional<double> snr_db;   // absent: noiseless
  bool empirical = false;         // analytic covariance unless set
};

/// Fully resolved run configuration (preset, then config file, then flags).
struct RunConfig {
  SystemConfig system;
  std::optional<SystemConfig> ml_system;
  std::vector<double> snr_db{0, 5, 10, 15, 20, 25, 30};
  std::size_t runs = 100;
  std::size_t blocks = 1000;
  std::size_t grid = kDefaultGridSize;
  std::size_t refine_iters = kDefaultRefineIters;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::vector<CfoRange> cfo_ranges{CfoRange{}};
  std::vector<Estimator> estimators{Estimator::proposed};
  std::vector<Detector> equalizers{Detector::zf, Detector::mmse};
  CfoMode cfo_mode = CfoMode::estimated;
  std::uint64_t ml_cap = kDefaultMlCap;
  ScanSettings scan;

  ExperimentPlan plan(const CfoRange& range) const;
};

/// "default", "fig1" or "fig2".
RunConfig preset(std::string_view name);

/// Applies the YAML document `text` on top of `cfg`. Errors name
/// `source:line`.
void apply_yaml(RunConfig& cfg, const std::string& text, const std::string& source);

/// Reads and applies a config file; a missing file raises "config not found".
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Serializes every field; the result round-trips through apply_yaml.
std::string to_yaml(const RunConfig& cfg);

/// Text report for the `info` command.
std::string info_report(const RunConfig& cfg);

/// Entry point shared by the executable and the tests. Exit codes: 0
/// success, 2 configuration error, 3 runtime or incompatibility error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ocdm::cli
