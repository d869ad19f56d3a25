#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "ocdm/fresnel.hpp"
#include "ocdm/types.hpp"
#include "ocdm/waveform.hpp"

namespace ocdm {

inline constexpr std::size_t kDefaultGridSize = 1024;
inline constexpr std::size_t kDefaultRefineIters = 40;
/// Coarse local minima that get a golden-section refinement.
inline constexpr std::size_t kRefineCandidates = 3;

/// Sample covariance (1/N_b) sum y(i) y(i)^H of received blocks.
class CovarianceEstimate {
 public:
  explicit CovarianceEstimate(std::size_t n);

  void accumulate(const ComplexBlock& y);
  void accumulate(const RxBlock& y) { accumulate(y.samples); }

  std::size_t size() const noexcept { return static_cast<std::size_t>(sum_.rows()); }
  std::size_t block_count() const noexcept { return count_; }
  /// Running mean; the zero matrix before the first block.
  CMatrix matrix() const;

 private:
  CMatrix sum_;
  std::size_t count_ = 0;
};

/// Model covariance
///   R_yy = D_N(w0) Phi^H H T_zp (E_s I_K) T_zp^H H^H Phi D_N^H(w0) + sigma^2 I_N
/// kept in square-root form R_yy = F F^H + sigma^2 I so that quadratic forms
/// on the null subspace evaluate without cancellation.
struct AnalyticCovariance {
  CMatrix factor;  // F = sqrt(E_s) D_N(w0) Phi^H H T_zp, N x K
  double sigma2 = 0.0;

  CMatrix matrix() const;
};

AnalyticCovariance analytic_covariance(const ChannelRealization& ch, double w0,
                                       const SystemConfig& cfg, const DfntMatrix& phi);

/// J(w) = sum_{k = K+L+1}^{N} phi_k^T D_N^{-1}(w) R D_N(w) phi_k^*, evaluated
/// directly as dense bilinear forms. Reference route; see NullSubchirpCost for
/// the evaluator used in searches.
double cost_function(const CMatrix& r, double w, const SystemConfig& cfg, const DfntMatrix& phi);

/// Precomputed null-subchirp cost J(w).
///
/// From a dense covariance, J(w) is collapsed into the trigonometric
/// polynomial sum_d g_d e^{j w d}, |d| < N, so each evaluation is O(N).
/// From an AnalyticCovariance, J(w) = ||F^H V(w)||_F^2 + sigma^2 ||V(w)||_F^2
/// with V(w) = D_N(w) [phi_k^*]_k.
class NullSubchirpCost {
 public:
  NullSubchirpCost(const CMatrix& r, const SystemConfig& cfg, const DfntMatrix& phi);
  NullSubchirpCost(const AnalyticCovariance& r, const SystemConfig& cfg, const DfntMatrix& phi);

  double operator()(double w) const;

  /// Noise floor sigma^2 (N - K - L) reached at the true CFO.
  std::size_t null_space_dim() const noexcept { return static_cast<std::size_t>(nulls_.cols()); }

 private:
  double evaluate_dense(double w) const;
  double evaluate_factored(double w) const;
  double finalize(cplx value) const;

  bool factored_ = false;
  CMatrix nulls_;            // columns phi_k^*, k in the null set
  CVector coeff_pos_;        // g_d, d = 0..N-1
  CVector coeff_neg_;        // g_{-d}, d = 0..N-1 (index 0 unused)
  CMatrix factor_adjoint_;   // F^H
  double sigma2_ = 0.0;
  double tolerance_ = 1e-10;
};

struct CostScan {
  std::vector<double> w;
  std::vector<double> cost;

  std::size_t size() const noexcept { return w.size(); }
  std::size_t argmin() const;
  double grid_step() const;
};

/// J on the grid w = -pi + 2 pi m / N_c, m = 0..N_c-1.
CostScan scan_cost(const NullSubchirpCost& cost, std::size_t grid_size);
CostScan scan_cost(const CMatrix& r, const SystemConfig& cfg, const DfntMatrix& phi,
                   std::size_t grid_size);

struct CfoEstimate {
  double w_hat = 0.0;        // in [-pi, pi)
  double cost_at_min = 0.0;
  std::size_t grid_size = 0;
  bool refined = false;
};

/// Coarse grid scan, then golden-section search over the two grid cells
/// around each of the lowest kRefineCandidates coarse local minima.
CfoEstimate estimate_cfo(const NullSubchirpCost& cost, std::size_t grid_size = kDefaultGridSize,
                         std::size_t refine_iters = kDefaultRefineIters);
CfoEstimate estimate_cfo(const CMatrix& r, const SystemConfig& cfg, const DfntMatrix& phi,
                         std::size_t grid_size = kDefaultGridSize,
                         std::size_t refine_iters = kDefaultRefineIters);

/// CP autocorrelation estimator on a raw stream of blocks that carry a CP of
/// cfg.cp_len > L samples:
///   w = (1/N) arg sum_i sum_{n = L}^{cp_len - 1} conj(u_i[n]) u_i[n + N].
/// The result lies in (-pi/N, pi/N]; larger offsets alias.
CfoEstimate cp_baseline_estimate(std::span<const cplx> stream, const SystemConfig& cfg);

/// Coarse full-range estimate from the null-subchirp cost, then the CP
/// estimator on the coarse-compensated stream for the residual.
CfoEstimate two_step_estimate(const NullSubchirpCost& cost, std::span<const cplx> stream,
                              const SystemConfig& cfg, std::size_t grid_size = kDefaultGridSize,
                              std::size_t refine_iters = kDefaultRefineIters);

struct IdentifiabilityReport {
  bool applicable = true;            // N - K - L >= 1
  std::size_t minima = 0;            // strict local minima below the threshold
  bool all_near_truth = false;       // every such minimum within one grid step of w0
  std::vector<double> minima_w;
};

/// Separates the true minimum from spurious ones on noiseless scans with N_c >= 4096.
inline constexpr double kDefaultMinimumThreshold = 1e-5;

/// Counts strict (circular) local minima of a scan below
/// relative_threshold * max(J).
IdentifiabilityReport identifiability_report(const CostScan& scan, double w0,
                                             const SystemConfig& cfg,
                                             double relative_threshold = kDefaultMinimumThreshold);

/// Two-column CSV with header "w,J".
void write_scan_csv(const CostScan& scan, std::ostream& os);

}  // namespace ocdm
