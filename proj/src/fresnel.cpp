#include "ocdm/fresnel.hpp"

#include <cmath>
#include <string>

namespace ocdm {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_size: return "invalid size";
    case Errc::taps_exceed_block: return "taps exceed block";
    case Errc::dimension: return "dimension mismatch";
    case Errc::framing: return "framing error";
    case Errc::range: return "out of range";
    case Errc::no_null_space: return "no null space";
    case Errc::no_excess_cp: return "no excess cyclic prefix";
    case Errc::singular_channel: return "singular channel";
    case Errc::combinatorial_blowup: return "combinatorial blowup";
    case Errc::undersampled: return "undersampled";
    case Errc::degenerate_configuration: return "degenerate configuration";
    case Errc::configuration: return "configuration error";
  }
  return "unknown";
}

double wrap_to_pi(double w) {
  double r = std::fmod(w + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  r -= kPi;
  // fmod can land exactly on +pi after the shift for inputs like -pi - eps.
  return r >= kPi ? -kPi : r;
}

double wrap_error(double diff) {
  return -wrap_to_pi(-diff);
}

DfntMatrix::DfntMatrix(std::size_t n, CMatrix phi)
    : n_(n), phi_(std::move(phi)), phi_h_(phi_.adjoint()) {}

DfntMatrix DfntMatrix::build(std::size_t n) {
  if (n == 0 || n > kMaxBlockSize) {
    throw Error(Errc::invalid_size,
                "DFnT size must be in [1, " + std::to_string(kMaxBlockSize) +
                    "], got " + std::to_string(n));
  }
  const double nd = static_cast<double>(n);
  const double shift = (n % 2 == 0) ? 0.0 : 0.5;
  const cplx global = std::polar(1.0 / std::sqrt(nd), -kPi / 4.0);

  // The kernel depends on (m - n) mod N only; evaluate one period and
  // reduce the squared argument modulo 2N to keep the phase small.
  CVector kernel(static_cast<Eigen::Index>(n));
  for (std::size_t d = 0; d < n; ++d) {
    const double arg = static_cast<double>(d) + shift;
    const double phase = kPi / nd * std::fmod(arg * arg, 2.0 * nd);
    kernel[static_cast<Eigen::Index>(d)] = global * std::polar(1.0, phase);
  }

  CMatrix phi(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = (m + n - k) % n;
      phi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) =
          kernel[static_cast<Eigen::Index>(d)];
    }
  }
  return DfntMatrix(n, std::move(phi));
}

ComplexBlock DfntMatrix::apply(const ComplexBlock& x) const {
  if (static_cast<std::size_t>(x.size()) != n_) {
    throw Error(Errc::dimension, "DFnT input length " + std::to_string(x.size()) +
                                     " != " + std::to_string(n_));
  }
  return phi_ * x;
}

ComplexBlock DfntMatrix::apply_inverse(const ComplexBlock& x) const {
  if (static_cast<std::size_t>(x.size()) != n_) {
    throw Error(Errc::dimension, "IDFnT input length " + std::to_string(x.size()) +
                                     " != " + std::to_string(n_));
  }
  return phi_h_ * x;
}

CVector DfntMatrix::subchirp(std::size_t k) const {
  if (k == 0 || k > n_) {
    throw Error(Errc::range, "subchirp index " + std::to_string(k) + " outside 1.." +
                                 std::to_string(n_));
  }
  return phi_.row(static_cast<Eigen::Index>(k - 1)).transpose();
}

CirculantChannel::CirculantChannel(CVector taps, CMatrix h)
    : taps_(std::move(taps)), h_(std::move(h)) {}

CirculantChannel CirculantChannel::from_taps(std::span<const cplx> taps, std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_size, "channel block size must be positive");
  if (taps.empty()) throw Error(Errc::invalid_size, "channel needs at least one tap");
  if (taps.size() > n) {
    throw Error(Errc::taps_exceed_block, std::to_string(taps.size()) +
                                             " taps exceed block size " + std::to_string(n));
  }
  const auto ni = static_cast<Eigen::Index>(n);
  CVector t(static_cast<Eigen::Index>(taps.size()));
  for (std::size_t l = 0; l < taps.size(); ++l) t[static_cast<Eigen::Index>(l)] = taps[l];

  CMatrix h = CMatrix::Zero(ni, ni);
  for (Eigen::Index col = 0; col < ni; ++col) {
    for (Eigen::Index l = 0; l < t.size(); ++l) h((col + l) % ni, col) = t[l];
  }
  return CirculantChannel(std::move(t), std::move(h));
}

ComplexBlock CirculantChannel::apply(const ComplexBlock& x) const {
  const Eigen::Index n = h_.rows();
  if (x.size() != n) {
    throw Error(Errc::dimension, "channel input length " + std::to_string(x.size()) +
                                     " != " + std::to_string(n));
  }
  return circular_convolve({taps_.data(), static_cast<std::size_t>(taps_.size())}, x);
}

ComplexBlock circular_convolve(std::span<const cplx> taps, const ComplexBlock& x) {
  const Eigen::Index n = x.size();
  if (static_cast<Eigen::Index>(taps.size()) > n) {
    throw Error(Errc::taps_exceed_block, "taps exceed block size");
  }
  ComplexBlock y = ComplexBlock::Zero(n);
  for (std::size_t l = 0; l < taps.size(); ++l) {
    const cplx h = taps[l];
    const auto li = static_cast<Eigen::Index>(l);
    for (Eigen::Index m = 0; m < n; ++m) y[(m + li) % n] += h * x[m];
  }
  return y;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace ocdm
