#include "ocdm/waveform.hpp"

#include <cmath>
#include <string>

namespace ocdm {

void SystemConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(Errc::configuration, msg); };
  if (n == 0 || n > kMaxBlockSize) fail("N must be in [1, " + std::to_string(kMaxBlockSize) + "]");
  if (k < 1 || k > n) fail("K must satisfy 1 <= K <= N");
  if (l + 1 > n) fail("channel order L must satisfy L + 1 <= N");
  if (cp_len < l) fail("cp_len must be >= L");
  if (!(es >= 0.0) || !std::isfinite(es)) fail("Es must be finite and >= 0");
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) fail("sigma2 must be finite and >= 0");
}

std::vector<cplx> map_qpsk(std::span<const std::uint8_t> bits, double es) {
  if (bits.size() % 2 != 0) {
    throw Error(Errc::framing, "QPSK needs an even bit count, got " + std::to_string(bits.size()));
  }
  const double a = std::sqrt(es / 2.0);
  std::vector<cplx> out;
  out.reserve(bits.size() / 2);
  for (std::size_t i = 0; i < bits.size(); i += 2) {
    const double im = bits[i] ? -a : a;
    const double re = bits[i + 1] ? -a : a;
    out.emplace_back(re, im);
  }
  return out;
}

std::vector<std::uint8_t> demap_qpsk(std::span<const cplx> symbols) {
  std::vector<std::uint8_t> bits;
  bits.reserve(2 * symbols.size());
  for (const cplx& s : symbols) {
    bits.push_back(s.imag() < 0.0 ? 1 : 0);
    bits.push_back(s.real() < 0.0 ? 1 : 0);
  }
  return bits;
}

std::vector<cplx> qpsk_constellation(double es) {
  const std::uint8_t bits[] = {0, 0, 0, 1, 1, 1, 1, 0};
  return map_qpsk(bits, es);
}

ChannelRealization draw_channel(std::size_t order, Rng& rng) {
  const double sd = std::sqrt(0.5 / static_cast<double>(order + 1));
  std::normal_distribution<double> gauss(0.0, sd);
  ChannelRealization ch;
  ch.taps.reserve(order + 1);
  for (std::size_t l = 0; l <= order; ++l) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    ch.taps.emplace_back(re, im);
  }
  return ch;
}

CVector cfo_diagonal(double w, std::size_t n) {
  CVector d(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    d[static_cast<Eigen::Index>(i)] = std::polar(1.0, w * static_cast<double>(i));
  }
  return d;
}

Modem::Modem(SystemConfig cfg)
    : cfg_((cfg.validate(), cfg)), phi_(DfntMatrix::build(cfg.n)) {}

double Modem::block_time(std::size_t index) const noexcept {
  return static_cast<double>(index) * static_cast<double>(cfg_.n + cfg_.cp_len) -
         static_cast<double>(cfg_.n);
}

TxBlock Modem::assemble(const CVector& symbols, std::size_t index) const {
  if (static_cast<std::size_t>(symbols.size()) != cfg_.k) {
    throw Error(Errc::dimension, "expected " + std::to_string(cfg_.k) + " symbols, got " +
                                     std::to_string(symbols.size()));
  }
  const auto k = static_cast<Eigen::Index>(cfg_.k);
  TxBlock tx;
  tx.symbols = symbols;
  // Phi^H T_zp keeps only the first K columns of Phi^H.
  tx.samples = phi_.adjoint().leftCols(k) * symbols;
  tx.index = index;
  return tx;
}

void Modem::add_noise(std::span<cplx> samples, Rng& rng) const {
  if (cfg_.sigma2 == 0.0) return;
  std::normal_distribution<double> gauss(0.0, std::sqrt(cfg_.sigma2 / 2.0));
  for (cplx& v : samples) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v += cplx(re, im);
  }
}

RxBlock Modem::propagate(const TxBlock& tx, const ChannelRealization& ch, double w0,
                         Rng& rng) const {
  if (!(w0 >= -kPi && w0 < kPi)) {
    throw Error(Errc::range, "CFO " + std::to_string(w0) + " outside [-pi, pi)");
  }
  if (static_cast<std::size_t>(tx.samples.size()) != cfg_.n) {
    throw Error(Errc::dimension, "transmit block length mismatch");
  }
  if (ch.taps.size() != cfg_.l + 1) {
    throw Error(Errc::dimension, "channel has " + std::to_string(ch.taps.size()) +
                                     " taps, expected L+1 = " + std::to_string(cfg_.l + 1));
  }
  const cplx phase = std::polar(1.0, w0 * block_time(tx.index));
  RxBlock rx;
  rx.index = tx.index;
  rx.samples = circular_convolve(ch.taps, tx.samples);
  add_noise({rx.samples.data(), static_cast<std::size_t>(rx.samples.size())}, rng);
  rx.samples = (phase * cfo_diagonal(w0, cfg_.n)).cwiseProduct(rx.samples);
  return rx;
}

ComplexBlock Modem::compensate(const RxBlock& rx, double w_hat) const {
  if (static_cast<std::size_t>(rx.samples.size()) != cfg_.n) {
    throw Error(Errc::dimension, "received block length mismatch");
  }
  const cplx phase = std::polar(1.0, -w_hat * block_time(rx.index));
  return (phase * cfo_diagonal(w_hat, cfg_.n).conjugate()).cwiseProduct(rx.samples);
}

std::vector<cplx> Modem::transmit_stream(std::span<const TxBlock> blocks,
                                         const ChannelRealization& ch, double w0,
                                         Rng& rng) const {
  if (!(w0 >= -kPi && w0 < kPi)) {
    throw Error(Errc::range, "CFO " + std::to_string(w0) + " outside [-pi, pi)");
  }
  if (ch.taps.size() != cfg_.l + 1) {
    throw Error(Errc::dimension, "channel tap count does not match L+1");
  }
  const std::size_t n = cfg_.n;
  const std::size_t p = cfg_.cp_len;
  const std::size_t seg = n + p;

  std::vector<cplx> tx(blocks.size() * seg);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].index != b + 1) {
      throw Error(Errc::framing, "stream blocks must be indexed 1, 2, ...");
    }
    const ComplexBlock& x = blocks[b].samples;
    if (static_cast<std::size_t>(x.size()) != n) {
      throw Error(Errc::dimension, "transmit block length mismatch");
    }
    cplx* out = tx.data() + b * seg;
    for (std::size_t c = 0; c < p; ++c) out[c] = x[static_cast<Eigen::Index>(n - p + c)];
    for (std::size_t m = 0; m < n; ++m) out[p + m] = x[static_cast<Eigen::Index>(m)];
  }

  std::vector<cplx> rx(tx.size(), cplx(0.0, 0.0));
  for (std::size_t t = 0; t < tx.size(); ++t) {
    for (std::size_t l = 0; l < ch.taps.size() && l <= t; ++l) rx[t] += ch.taps[l] * tx[t - l];
  }
  add_noise(rx, rng);
  for (std::size_t t = 0; t < rx.size(); ++t) rx[t] *= std::polar(1.0, w0 * static_cast<double>(t));
  return rx;
}

std::vector<RxBlock> Modem::split_stream(std::span<const cplx> stream) const {
  const std::size_t n = cfg_.n;
  const std::size_t seg = n + cfg_.cp_len;
  if (stream.size() % seg != 0) {
    throw Error(Errc::framing, "stream length " + std::to_string(stream.size()) +
                                   " is not a multiple of N + cp_len");
  }
  std::vector<RxBlock> out(stream.size() / seg);
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b].index = b + 1;
    out[b].samples = Eigen::Map<const CVector>(stream.data() + b * seg + cfg_.cp_len,
                                               static_cast<Eigen::Index>(n));
  }
  return out;
}

}  // namespace ocdm
