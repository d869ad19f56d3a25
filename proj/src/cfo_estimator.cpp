#include "ocdm/cfo_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "ocdm/io.hpp"

namespace ocdm {

namespace {

void check_null_space(const SystemConfig& cfg) {
  if (cfg.null_space_dim() < 1) {
    throw Error(Errc::no_null_space,
                "N - K - L = " + std::to_string(static_cast<long long>(cfg.n) -
                                                static_cast<long long>(cfg.k + cfg.l)) +
                    " < 1: no null-subchirp subspace, estimator inapplicable");
  }
}

void check_dims(const CMatrix& r, const SystemConfig& cfg, const DfntMatrix& phi) {
  const auto n = static_cast<Eigen::Index>(cfg.n);
  if (phi.size() != cfg.n || r.rows() != n || r.cols() != n) {
    throw Error(Errc::dimension, "covariance / DFnT size does not match N = " +
                                     std::to_string(cfg.n));
  }
}

// Columns phi_k^* = [Phi^H]_{:,k} for k = K+L+1..N.
CMatrix null_subchirps(const SystemConfig& cfg, const DfntMatrix& phi) {
  const auto first = static_cast<Eigen::Index>(cfg.k + cfg.l);
  const auto count = static_cast<Eigen::Index>(cfg.null_space_dim());
  return phi.adjoint().middleCols(first, count);
}

}  // namespace

CovarianceEstimate::CovarianceEstimate(std::size_t n)
    : sum_(CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

void CovarianceEstimate::accumulate(const ComplexBlock& y) {
  if (y.size() != sum_.rows()) {
    throw Error(Errc::dimension, "block length " + std::to_string(y.size()) +
                                     " does not match covariance size " +
                                     std::to_string(sum_.rows()));
  }
  sum_.noalias() += y * y.adjoint();
  ++count_;
}

CMatrix CovarianceEstimate::matrix() const {
  if (count_ == 0) return sum_;
  return sum_ / static_cast<double>(count_);
}

CMatrix AnalyticCovariance::matrix() const {
  CMatrix r = factor * factor.adjoint();
  r.diagonal().array() += sigma2;
  return r;
}

AnalyticCovariance analytic_covariance(const ChannelRealization& ch, double w0,
                                       const SystemConfig& cfg, const DfntMatrix& phi) {
  if (!(w0 >= -kPi && w0 < kPi)) {
    throw Error(Errc::range, "CFO " + std::to_string(w0) + " outside [-pi, pi)");
  }
  if (phi.size() != cfg.n) throw Error(Errc::dimension, "DFnT size does not match N");
  const auto h = CirculantChannel::from_taps(ch.taps, cfg.n);
  const auto k = static_cast<Eigen::Index>(cfg.k);

  // Phi^H H T_zp: the first K columns of Phi^H H.
  CMatrix f = phi.adjoint() * h.matrix().leftCols(k);
  f = cfo_diagonal(w0, cfg.n).asDiagonal() * f;
  f *= std::sqrt(cfg.es);
  return AnalyticCovariance{std::move(f), cfg.sigma2};
}

double cost_function(const CMatrix& r, double w, const SystemConfig& cfg,
                     const DfntMatrix& phi) {
  check_null_space(cfg);
  check_dims(r, cfg, phi);
  const CMatrix nulls = null_subchirps(cfg, phi);
  const CVector d = cfo_diagonal(w, cfg.n);
  cplx total(0.0, 0.0);
  for (Eigen::Index k = 0; k < nulls.cols(); ++k) {
    const CVector v = d.cwiseProduct(nulls.col(k));
    total += v.dot(r * v);  // v^H R v
  }
  const double tol = 1e-10 * std::max(1.0, std::abs(r.trace()));
  if (std::abs(total.imag()) > tol || total.real() < -tol) {
    throw Error(Errc::configuration, "covariance is not Hermitian positive semidefinite");
  }
  return std::max(0.0, total.real());
}

NullSubchirpCost::NullSubchirpCost(const CMatrix& r, const SystemConfig& cfg,
                                   const DfntMatrix& phi) {
  check_null_space(cfg);
  check_dims(r, cfg, phi);
  nulls_ = null_subchirps(cfg, phi);
  tolerance_ = 1e-10 * std::max(1.0, std::abs(r.trace()));

  // J(w) = sum_{m,n} R_mn P_mn e^{j w (n - m)} with P = (C C^H)^T.
  const CMatrix p = (nulls_ * nulls_.adjoint()).transpose();
  const auto n = static_cast<Eigen::Index>(cfg.n);
  coeff_pos_ = CVector::Zero(n);
  coeff_neg_ = CVector::Zero(n);
  for (Eigen::Index d = 0; d < n; ++d) {
    for (Eigen::Index m = 0; m + d < n; ++m) {
      coeff_pos_[d] += r(m, m + d) * p(m, m + d);
      if (d > 0) coeff_neg_[d] += r(m + d, m) * p(m + d, m);
    }
  }
}

NullSubchirpCost::NullSubchirpCost(const AnalyticCovariance& r, const SystemConfig& cfg,
                                   const DfntMatrix& phi)
    : factored_(true), sigma2_(r.sigma2) {
  check_null_space(cfg);
  if (phi.size() != cfg.n || r.factor.rows() != static_cast<Eigen::Index>(cfg.n)) {
    throw Error(Errc::dimension, "covariance factor does not match N");
  }
  nulls_ = null_subchirps(cfg, phi);
  factor_adjoint_ = r.factor.adjoint();
  const double trace = r.factor.squaredNorm() + r.sigma2 * static_cast<double>(cfg.n);
  tolerance_ = 1e-10 * std::max(1.0, trace);
}

double NullSubchirpCost::operator()(double w) const {
  return factored_ ? evaluate_factored(w) : evaluate_dense(w);
}

double NullSubchirpCost::evaluate_dense(double w) const {
  const cplx z = std::polar(1.0, w);
  const cplx zinv = std::conj(z);
  const Eigen::Index n = coeff_pos_.size();
  // Horner on both halves of the Laurent polynomial.
  cplx pos(0.0, 0.0);
  cplx neg(0.0, 0.0);
  for (Eigen::Index d = n - 1; d >= 1; --d) {
    pos = pos * z + coeff_pos_[d];
    neg = neg * zinv + coeff_neg_[d];
  }
  const cplx total = coeff_pos_[0] + pos * z + neg * zinv;
  return finalize(total);
}

double NullSubchirpCost::evaluate_factored(double w) const {
  const CMatrix v = cfo_diagonal(w, static_cast<std::size_t>(nulls_.rows())).asDiagonal() * nulls_;
  const double signal = (factor_adjoint_ * v).squaredNorm();
  return signal + sigma2_ * v.squaredNorm();
}

double NullSubchirpCost::finalize(cplx value) const {
  if (std::abs(value.imag()) > tolerance_ || value.real() < -tolerance_) {
    throw Error(Errc::configuration, "covariance is not Hermitian positive semidefinite");
  }
  return std::max(0.0, value.real());
}

std::size_t CostScan::argmin() const {
  return static_cast<std::size_t>(std::min_element(cost.begin(), cost.end()) - cost.begin());
}

double CostScan::grid_step() const {
  return w.empty() ? 0.0 : 2.0 * kPi / static_cast<double>(w.size());
}

CostScan scan_cost(const NullSubchirpCost& cost, std::size_t grid_size) {
  if (grid_size < 2) throw Error(Errc::invalid_size, "scan needs at least 2 grid points");
  CostScan scan;
  scan.w.resize(grid_size);
  scan.cost.resize(grid_size);
  const double step = 2.0 * kPi / static_cast<double>(grid_size);
  for (std::size_t m = 0; m < grid_size; ++m) {
    scan.w[m] = -kPi + step * static_cast<double>(m);
    scan.cost[m] = cost(scan.w[m]);
  }
  return scan;
}

CostScan scan_cost(const CMatrix& r, const SystemConfig& cfg, const DfntMatrix& phi,
                   std::size_t grid_size) {
  return scan_cost(NullSubchirpCost(r, cfg, phi), grid_size);
}

namespace {

struct Minimum {
  double w;
  double j;
};

// Golden-section search of J on [a, b], returning the best point evaluated.
Minimum golden_section(const NullSubchirpCost& cost, double a, double b, Minimum best,
                       std::size_t iters) {
  const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_golden * (b - a);
  double d = a + inv_golden * (b - a);
  double fc = cost(c);
  double fd = cost(d);
  auto keep = [&](double w, double j) {
    if (j < best.j) best = {w, j};
  };
  keep(c, fc);
  keep(d, fd);
  for (std::size_t it = 0; it < iters; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_golden * (b - a);
      fc = cost(c);
      keep(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_golden * (b - a);
      fd = cost(d);
      keep(d, fd);
    }
  }
  return best;
}

}  // namespace

CfoEstimate estimate_cfo(const NullSubchirpCost& cost, std::size_t grid_size,
                         std::size_t refine_iters) {
  const CostScan scan = scan_cost(cost, grid_size);
  const std::size_t m = scan.argmin();
  Minimum best{scan.w[m], scan.cost[m]};

  if (refine_iters > 0) {
    // Near-degenerate channels can leave two basins with almost equal minima,
    // and which one the coarse grid favours then depends on the grid offset.
    // Refine the lowest few coarse local minima and keep the overall best.
    std::vector<std::size_t> candidates;
    const std::size_t n = scan.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double j = scan.cost[i];
      if (j <= scan.cost[(i + n - 1) % n] && j <= scan.cost[(i + 1) % n]) candidates.push_back(i);
    }
    const std::size_t keep = std::min(candidates.size(), kRefineCandidates);
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(),
                      [&](std::size_t a, std::size_t b) { return scan.cost[a] < scan.cost[b]; });
    // J is 2 pi periodic, so a bracket may cross +-pi unwrapped.
    const double step = scan.grid_step();
    for (std::size_t c = 0; c < keep; ++c) {
      const std::size_t i = candidates[c];
      best = golden_section(cost, scan.w[i] - step, scan.w[i] + step, best, refine_iters);
    }
  }
  return CfoEstimate{wrap_to_pi(best.w), best.j, grid_size, refine_iters > 0};
}

CfoEstimate estimate_cfo(const CMatrix& r, const SystemConfig& cfg, const DfntMatrix& phi,
                         std::size_t grid_size, std::size_t refine_iters) {
  return estimate_cfo(NullSubchirpCost(r, cfg, phi), grid_size, refine_iters);
}

CfoEstimate cp_baseline_estimate(std::span<const cplx> stream, const SystemConfig& cfg) {
  if (cfg.cp_len <= cfg.l) {
    throw Error(Errc::no_excess_cp, "CP length " + std::to_string(cfg.cp_len) +
                                        " leaves no excess over channel order " +
                                        std::to_string(cfg.l));
  }
  const std::size_t n = cfg.n;
  const std::size_t seg = n + cfg.cp_len;
  if (stream.size() % seg != 0) {
    throw Error(Errc::framing, "stream length is not a multiple of N + cp_len");
  }
  cplx acc(0.0, 0.0);
  for (std::size_t start = 0; start < stream.size(); start += seg) {
    // The first L CP samples carry interference from the previous block.
    for (std::size_t i = cfg.l; i < cfg.cp_len; ++i) {
      acc += std::conj(stream[start + i]) * stream[start + i + n];
    }
  }
  return CfoEstimate{std::arg(acc) / static_cast<double>(n), 0.0, 0, false};
}

CfoEstimate two_step_estimate(const NullSubchirpCost& cost, std::span<const cplx> stream,
                              const SystemConfig& cfg, std::size_t grid_size,
                              std::size_t refine_iters) {
  const CfoEstimate coarse = estimate_cfo(cost, grid_size, refine_iters);
  std::vector<cplx> derotated(stream.begin(), stream.end());
  for (std::size_t t = 0; t < derotated.size(); ++t) {
    derotated[t] *= std::polar(1.0, -coarse.w_hat * static_cast<double>(t));
  }
  const CfoEstimate fine = cp_baseline_estimate(derotated, cfg);
  return CfoEstimate{wrap_to_pi(coarse.w_hat + fine.w_hat), coarse.cost_at_min, grid_size, true};
}

IdentifiabilityReport identifiability_report(const CostScan& scan, double w0,
                                             const SystemConfig& cfg,
                                             double relative_threshold) {
  IdentifiabilityReport report;
  if (cfg.null_space_dim() < 1) {
    report.applicable = false;
    return report;
  }
  const std::size_t count = scan.size();
  if (count < 3) return report;
  const double threshold =
      relative_threshold * *std::max_element(scan.cost.begin(), scan.cost.end());
  const double near = scan.grid_step() * (1.0 + 1e-9);

  bool all_near = true;
  for (std::size_t m = 0; m < count; ++m) {
    const double j = scan.cost[m];
    const double prev = scan.cost[(m + count - 1) % count];
    const double next = scan.cost[(m + 1) % count];
    if (j < prev && j < next && j < threshold) {
      ++report.minima;
      report.minima_w.push_back(scan.w[m]);
      if (std::abs(wrap_error(scan.w[m] - w0)) > near) all_near = false;
    }
  }
  report.all_near_truth = report.minima > 0 && all_near;
  return report;
}

void write_scan_csv(const CostScan& scan, std::ostream& os) {
  os << "w,J\n";
  for (std::size_t m = 0; m < scan.size(); ++m) {
    os << format_number(scan.w[m]) << ',' << format_number(scan.cost[m]) << '\n';
  }
}

}  // namespace ocdm
