#pragma once

#include <cstddef>
#include <span>

#include "ocdm/types.hpp"

namespace ocdm {

inline constexpr std::size_t kMaxBlockSize = 4096;

/// Discrete Fresnel transform matrix Phi of size N x N.
///
/// Entries follow the chirp kernel
///   [Phi]_{m,n} = e^{-j pi/4} / sqrt(N) * e^{j pi/N (m - n)^2}          (N even)
///   [Phi]_{m,n} = e^{-j pi/4} / sqrt(N) * e^{j pi/N (m + 1/2 - n)^2}    (N odd)
/// with 1-based m, n. Storage is 0-based; the kernel only depends on m - n,
/// so the index offset cancels and row r here is subchirp r + 1.
///
/// Phi is circulant and unitary. Instances are immutable.
class DfntMatrix {
 public:
  static DfntMatrix build(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  const CMatrix& matrix() const noexcept { return phi_; }
  const CMatrix& adjoint() const noexcept { return phi_h_; }

  /// Phi x.
  ComplexBlock apply(const ComplexBlock& x) const;
  /// Phi^H x.
  ComplexBlock apply_inverse(const ComplexBlock& x) const;

  /// Subchirp k (1-based) as a column vector: phi_k = [Phi^T]_{:,k}.
  CVector subchirp(std::size_t k) const;

 private:
  DfntMatrix(std::size_t n, CMatrix phi);

  std::size_t n_;
  CMatrix phi_;
  CMatrix phi_h_;
};

/// Circulant channel matrix whose first column is [h(0), ..., h(L), 0, ..., 0]^T.
class CirculantChannel {
 public:
  static CirculantChannel from_taps(std::span<const cplx> taps, std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(h_.rows()); }
  std::size_t order() const noexcept { return taps_.size() - 1; }
  const CVector& taps() const noexcept { return taps_; }
  const CMatrix& matrix() const noexcept { return h_; }

  /// H x as a circular convolution with the taps, O(N (L+1)).
  ComplexBlock apply(const ComplexBlock& x) const;

 private:
  CirculantChannel(CVector taps, CMatrix h);

  CVector taps_;
  CMatrix h_;
};

/// Circular convolution of x with taps (equivalent to H x), O(N (L+1)).
ComplexBlock circular_convolve(std::span<const cplx> taps, const ComplexBlock& x);

/// Max-abs entry of a matrix; used by the algebraic identity checks.
double max_abs(const CMatrix& m);

}  // namespace ocdm
