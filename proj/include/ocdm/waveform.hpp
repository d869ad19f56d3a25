#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ocdm/fresnel.hpp"
#include "ocdm/types.hpp"

namespace ocdm {

using Rng = std::mt19937_64;

/// Frame structure of one OCDM block with consecutive null subchirps.
///
/// Data occupy Fresnel-domain positions 1..K, nulls K+1..N. The CFO
/// estimator needs at least L+1 nulls.
struct SystemConfig {
  std::size_t n = 16;       // block length N
  std::size_t k = 12;       // data symbols per block K
  std::size_t l = 2;        // channel order L
  std::size_t cp_len = 2;   // cyclic prefix length, >= L
  double es = 1.0;          // symbol energy E_s
  double sigma2 = 0.0;      // noise variance sigma^2

  /// Throws Error(configuration) when the invariants do not hold.
  void validate() const;

  std::size_t null_count() const noexcept { return n - k; }
  /// Dimension of the null-subchirp subspace, N - K - L (0 if negative).
  std::size_t null_space_dim() const noexcept { return n > k + l ? n - k - l : 0; }
  /// At least L + 1 nulls: the cost function has a unique minimum over [-pi, pi).
  bool identifiable() const noexcept { return n >= k + l + 1; }
};

struct ChannelRealization {
  std::vector<cplx> taps;

  std::size_t order() const noexcept { return taps.empty() ? 0 : taps.size() - 1; }
};

struct TxBlock {
  CVector symbols;        // s(i), length K
  ComplexBlock samples;   // x(i) = Phi^H T_zp s(i), length N
  std::size_t index = 1;  // i
};

struct RxBlock {
  ComplexBlock samples;   // y(i)
  std::size_t index = 1;
};

/// Gray QPSK with per-symbol energy es. Bit pairs (b1 b0) map as
/// 00 -> (1+j), 01 -> (-1+j), 11 -> (-1-j), 10 -> (1-j), scaled by sqrt(es/2).
std::vector<cplx> map_qpsk(std::span<const std::uint8_t> bits, double es);

/// Quadrant slicer inverting map_qpsk.
std::vector<std::uint8_t> demap_qpsk(std::span<const cplx> symbols);

/// Unit-energy QPSK alphabet in map_qpsk order (00, 01, 11, 10).
std::vector<cplx> qpsk_constellation(double es = 1.0);

/// L+1 i.i.d. CN(0, 1/(L+1)) taps, unit average total power.
ChannelRealization draw_channel(std::size_t order, Rng& rng);

/// Diagonal of D_N(w): e^{j w (n-1)} for n = 1..N.
CVector cfo_diagonal(double w, std::size_t n);

/// Transmitter, channel and receiver front-end for one frame structure.
class Modem {
 public:
  explicit Modem(SystemConfig cfg);

  const SystemConfig& config() const noexcept { return cfg_; }
  const DfntMatrix& dfnt() const noexcept { return phi_; }

  /// x(i) = Phi^H T_zp s(i).
  TxBlock assemble(const CVector& symbols, std::size_t index = 1) const;

  /// Per-block received signal
  ///   y(i) = e^{j w0 (i (N+P) - N)} D_N(w0) H Phi^H T_zp s(i) + n(i)
  /// with P the CP length (P = L reproduces the usual model exactly).
  /// The AWGN sample is drawn before the CFO rotation and rotated with the
  /// signal. Circular white noise keeps its distribution under the rotation,
  /// and runs that differ only in w0 then see the same noise.
  RxBlock propagate(const TxBlock& tx, const ChannelRealization& ch, double w0,
                    Rng& rng) const;

  /// r(i) = e^{-j w (i (N+P) - N)} D_N^H(w) y(i).
  ComplexBlock compensate(const RxBlock& rx, double w_hat) const;

  /// Time-domain stream: CP insertion, linear convolution, CFO rotation
  /// e^{j w0 t} with t = 0 at the first CP sample, and AWGN on every sample
  /// (drawn before the rotation, as in propagate).
  /// Blocks must carry consecutive indices starting at 1.
  std::vector<cplx> transmit_stream(std::span<const TxBlock> blocks,
                                    const ChannelRealization& ch, double w0,
                                    Rng& rng) const;

  /// Drops the CP of every block in a stream produced by transmit_stream.
  std::vector<RxBlock> split_stream(std::span<const cplx> stream) const;

  /// Phase offset i (N+P) - N of block i.
  double block_time(std::size_t index) const noexcept;

 private:
  void add_noise(std::span<cplx> samples, Rng& rng) const;

  SystemConfig cfg_;
  DfntMatrix phi_;
};

}  // namespace ocdm
