#include "ocdm/equalizers.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace ocdm {

CompositeChannel build_composite(const ChannelRealization& ch, const SystemConfig& cfg,
                                 const DfntMatrix& phi) {
  if (phi.size() != cfg.n) throw Error(Errc::dimension, "DFnT size does not match N");
  const auto h = CirculantChannel::from_taps(ch.taps, cfg.n);
  const auto k = static_cast<Eigen::Index>(cfg.k);
  CompositeChannel out;
  out.b = h.matrix() * phi.adjoint().leftCols(k);
  out.demodulated = phi.matrix() * out.b;
  out.degenerate = h.taps().isZero(0.0);
  return out;
}

Equalizer zf(const CMatrix& b) {
  if (b.cols() > b.rows()) {
    throw Error(Errc::singular_channel, "B has more columns than rows; no left inverse");
  }
  Eigen::JacobiSVD<CMatrix> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || !(s[s.size() - 1] > 1e-10 * s[0])) {
    throw Error(Errc::singular_channel, "composite channel is rank deficient");
  }
  const Eigen::VectorXd inv = s.cwiseInverse();
  return Equalizer{EqualizerKind::zf,
                   svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint()};
}

Equalizer mmse(const CMatrix& b, double sigma2, double es) {
  if (!(es > 0.0)) throw Error(Errc::configuration, "MMSE needs Es > 0");
  if (!(sigma2 >= 0.0)) throw Error(Errc::configuration, "MMSE needs sigma2 >= 0");
  const double ratio = sigma2 / es;
  if (ratio == 0.0) {
    // The unregularized limit is the pseudo-inverse; Cholesky would accept a
    // numerically singular Gram matrix here.
    return Equalizer{EqualizerKind::mmse, zf(b).g};
  }
  CMatrix a = b.adjoint() * b;
  a.diagonal().array() += ratio;
  Eigen::LLT<CMatrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw Error(Errc::singular_channel, "MMSE system is singular");
  }
  return Equalizer{EqualizerKind::mmse, llt.solve(b.adjoint())};
}

CVector equalize(const Equalizer& eq, const ComplexBlock& r) {
  if (r.size() != eq.g.cols()) {
    throw Error(Errc::dimension, "equalizer expects length " + std::to_string(eq.g.cols()) +
                                     ", got " + std::to_string(r.size()));
  }
  return eq.g * r;
}

std::uint64_t search_size(std::size_t constellation_size, std::size_t k) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (constellation_size != 0 &&
        total > std::numeric_limits<std::uint64_t>::max() / constellation_size) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= constellation_size;
  }
  return total;
}

CVector ml_detect(const ComplexBlock& r, const CMatrix& b, std::span<const cplx> constellation,
                  std::uint64_t cap) {
  const Eigen::Index n = b.rows();
  const Eigen::Index k = b.cols();
  if (r.size() != n) throw Error(Errc::dimension, "received block does not match B");
  if (constellation.empty()) throw Error(Errc::invalid_size, "empty constellation");
  const std::uint64_t states = search_size(constellation.size(), static_cast<std::size_t>(k));
  if (states > cap) {
    throw Error(Errc::combinatorial_blowup,
                "ML search over " + std::to_string(constellation.size()) + "^" +
                    std::to_string(k) + " candidates exceeds cap " + std::to_string(cap) +
                    "; reduce K");
  }
  const auto m_count = static_cast<Eigen::Index>(constellation.size());

  // contrib[j * M + m] = B(:, j) * c_m
  std::vector<CVector> contrib(static_cast<std::size_t>(k * m_count));
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index m = 0; m < m_count; ++m) {
      contrib[static_cast<std::size_t>(j * m_count + m)] =
          b.col(j) * constellation[static_cast<std::size_t>(m)];
    }
  }

  std::vector<CVector> residual(static_cast<std::size_t>(k) + 1, r);
  std::vector<Eigen::Index> choice(static_cast<std::size_t>(k), 0);
  std::vector<Eigen::Index> best_choice(static_cast<std::size_t>(k), 0);
  double best = std::numeric_limits<double>::infinity();

  if (k == 0) return CVector(0);

  // Depth-first, lexicographic in (choice[0], ..., choice[K-1]).
  auto descend = [&](auto&& self, Eigen::Index j) -> void {
    const auto ju = static_cast<std::size_t>(j);
    for (Eigen::Index m = 0; m < m_count; ++m) {
      choice[ju] = m;
      const CVector& c = contrib[static_cast<std::size_t>(j * m_count + m)];
      if (j + 1 < k) {
        residual[ju + 1] = residual[ju] - c;
        self(self, j + 1);
        continue;
      }
      double acc = 0.0;
      Eigen::Index row = 0;
      for (; row < n; ++row) {
        acc += std::norm(residual[ju][row] - c[row]);
        if (acc >= best) break;
      }
      if (row == n && acc < best) {
        best = acc;
        best_choice = choice;
      }
    }
  };
  descend(descend, 0);

  CVector s(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    s[j] = constellation[static_cast<std::size_t>(best_choice[static_cast<std::size_t>(j)])];
  }
  return s;
}

}  // namespace ocdm
