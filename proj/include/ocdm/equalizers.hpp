#pragma once

#include <cstdint>
#include <span>

#include "ocdm/fresnel.hpp"
#include "ocdm/types.hpp"
#include "ocdm/waveform.hpp"

namespace ocdm {

/// Largest |constellation|^K the exhaustive detector accepts by default (4^10).
inline constexpr std::uint64_t kDefaultMlCap = 1ull << 20;

/// B = H Phi^H T_zp together with its demodulated form Phi B = H T_zp, a
/// tall banded Toeplitz matrix (zero-padded single-carrier equivalent).
struct CompositeChannel {
  CMatrix b;            // N x K
  CMatrix demodulated;  // N x K
  bool degenerate = false;  // all taps zero
};

CompositeChannel build_composite(const ChannelRealization& ch, const SystemConfig& cfg,
                                 const DfntMatrix& phi);

enum class EqualizerKind { zf, mmse };

struct Equalizer {
  EqualizerKind kind = EqualizerKind::zf;
  CMatrix g;  // K x N
};

/// G = B^dagger via thin SVD; rank test sigma_min > 1e-10 sigma_max.
Equalizer zf(const CMatrix& b);

/// G = B^H (sigma2/es I_N + B B^H)^{-1}, evaluated in the equivalent K x K
/// form (sigma2/es I_K + B^H B)^{-1} B^H.
Equalizer mmse(const CMatrix& b, double sigma2, double es);

CVector equalize(const Equalizer& eq, const ComplexBlock& r);

/// Exhaustive search of argmin_s ||r - B s||^2 over constellation^K in
/// lexicographic order. The partial residual norm is used to abandon a
/// candidate early, which never changes the argmin; ties keep the first.
CVector ml_detect(const ComplexBlock& r, const CMatrix& b, std::span<const cplx> constellation,
                  std::uint64_t cap = kDefaultMlCap);

/// |constellation|^K, saturating at UINT64_MAX.
std::uint64_t search_size(std::size_t constellation_size, std::size_t k);

}  // namespace ocdm
