#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ocdm/fresnel.hpp"

using namespace ocdm;

namespace {

std::vector<cplx> random_taps(std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> taps(count);
  for (auto& t : taps) t = cplx(g(rng), g(rng));
  return taps;
}

CVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector x(n);
  for (auto& v : x) v = cplx(g(rng), g(rng));
  return x;
}

}  // namespace

TEST_CASE("dfnt: entries match the chirp kernel for both parities") {
  for (std::size_t n : {1u, 2u, 3u, 7u, 8u, 16u, 33u, 64u}) {
    CAPTURE(n);
    const auto phi = DfntMatrix::build(n);
    CHECK(max_abs(phi.matrix() - oracle::dfnt(n)) < 1e-12);
  }
}

TEST_CASE("dfnt: scalar and 2x2 cases") {
  const auto one = DfntMatrix::build(1);
  CHECK(std::abs(one.matrix()(0, 0) - cplx(1.0, 0.0)) < 1e-15);

  const auto two = DfntMatrix::build(2);
  const cplx a = std::exp(cplx(0, -kPi / 4)) / std::sqrt(2.0);
  const cplx b = std::exp(cplx(0, kPi / 4)) / std::sqrt(2.0);
  CHECK(std::abs(two.matrix()(0, 0) - a) < 1e-15);
  CHECK(std::abs(two.matrix()(1, 1) - a) < 1e-15);
  CHECK(std::abs(two.matrix()(0, 1) - b) < 1e-15);
  CHECK(std::abs(two.matrix()(1, 0) - b) < 1e-15);
}

TEST_CASE("dfnt: unitary, circulant, constant modulus for N = 1..64") {
  for (std::size_t n = 1; n <= 64; ++n) {
    CAPTURE(n);
    const auto phi = DfntMatrix::build(n);
    const CMatrix& p = phi.matrix();
    const CMatrix eye = CMatrix::Identity(n, n);
    CHECK(max_abs(p * p.adjoint() - eye) < 1e-12);
    CHECK(max_abs(p.adjoint() * p - eye) < 1e-12);
    double worst = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        worst = std::max(worst, std::abs(std::abs(p(r, c)) - 1.0 / std::sqrt(double(n))));
        // row r+1 is row r shifted right by one
        if (r + 1 < n) worst = std::max(worst, std::abs(p(r + 1, (c + 1) % n) - p(r, c)));
      }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("dfnt: row k + dk is row k shifted by dk") {
  const auto phi = DfntMatrix::build(16);
  for (std::size_t dk : {1u, 3u, 7u}) {
    for (std::size_t c = 0; c < 16; ++c)
      CHECK(std::abs(phi.matrix()(2 + dk, (c + dk) % 16) - phi.matrix()(2, c)) < 1e-12);
  }
}

TEST_CASE("dfnt: size errors") {
  CHECK_THROWS_AS(DfntMatrix::build(0), Error);
  try {
    DfntMatrix::build(0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_size);
  }
  try {
    DfntMatrix::build(kMaxBlockSize + 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_size);
  }
}

TEST_CASE("dfnt: apply and apply_inverse") {
  std::mt19937_64 rng(11);
  const auto phi = DfntMatrix::build(16);
  const CVector x = random_vector(16, rng);
  CHECK(phi.apply(phi.apply_inverse(x)).isApprox(x, 1e-13));
  CHECK((phi.apply(phi.apply_inverse(x)) - x).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(phi.apply(x).norm() - x.norm()) < 1e-12);
  CHECK(phi.apply(CVector::Zero(16)).norm() == 0.0);

  const auto one = DfntMatrix::build(1);
  CVector c(1);
  c[0] = cplx(0.3, -2.0);
  CHECK(std::abs(one.apply(c)[0] - c[0]) < 1e-15);

  try {
    phi.apply(CVector::Zero(15));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimension);
  }
  CHECK_THROWS_AS(phi.apply_inverse(CVector::Zero(17)), Error);
}

TEST_CASE("dfnt: subchirp is the 1-based row") {
  const auto phi = DfntMatrix::build(8);
  for (std::size_t k = 1; k <= 8; ++k)
    CHECK(max_abs(phi.subchirp(k) - phi.matrix().row(k - 1).transpose()) == 0.0);
}

TEST_CASE("circulant: hand examples") {
  const std::vector<cplx> unit{1.0};
  CHECK(max_abs(CirculantChannel::from_taps(unit, 4).matrix() - CMatrix::Identity(4, 4)) == 0.0);

  const std::vector<cplx> delay{0.0, 1.0};
  const CMatrix shift = CirculantChannel::from_taps(delay, 3).matrix();
  CMatrix expect = CMatrix::Zero(3, 3);
  expect(1, 0) = expect(2, 1) = expect(0, 2) = 1.0;
  CHECK(max_abs(shift - expect) == 0.0);

  const std::vector<cplx> two{1.0, cplx(0, 0.5)};
  const CMatrix h = CirculantChannel::from_taps(two, 4).matrix();
  CHECK(h(0, 0) == cplx(1.0));
  CHECK(h(0, 1) == cplx(0.0));
  CHECK(h(0, 2) == cplx(0.0));
  CHECK(h(0, 3) == cplx(0, 0.5));
  CHECK(h(1, 0) == cplx(0, 0.5));
}

TEST_CASE("circulant: matches direct construction and circular convolution") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {3u, 8u, 13u}) {
    const auto taps = random_taps(3, rng);
    const auto ch = CirculantChannel::from_taps(taps, n);
    CHECK(max_abs(ch.matrix() - oracle::circulant(taps, n)) == 0.0);
    CHECK(ch.order() == 2);
    const CVector x = random_vector(n, rng);
    CHECK((ch.apply(x) - ch.matrix() * x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((circular_convolve(taps, x) - ch.matrix() * x).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("circulant: too many taps") {
  const std::vector<cplx> taps(5, cplx(1.0));
  try {
    CirculantChannel::from_taps(taps, 4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::taps_exceed_block);
  }
  CHECK_NOTHROW(CirculantChannel::from_taps(taps, 5));
}

TEST_CASE("circulant channel commutes with the inverse transform, both parities") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> order(0, 63);
  for (std::size_t n = 2; n <= 64; ++n) {
    CAPTURE(n);
    const auto phi = DfntMatrix::build(n);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t l = order(rng) % n;
      const auto h = CirculantChannel::from_taps(random_taps(l + 1, rng), n).matrix();
      worst = std::max(worst, max_abs(h * phi.adjoint() - phi.adjoint() * h));
      worst = std::max(worst, max_abs(phi.matrix() * h * phi.adjoint() - h));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("wrap helpers") {
  CHECK(wrap_to_pi(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_to_pi(-kPi) == doctest::Approx(-kPi));
  CHECK(wrap_to_pi(3 * kPi + 0.1) == doctest::Approx(-kPi + 0.1));
  CHECK(wrap_error(kPi) == doctest::Approx(kPi));
  CHECK(wrap_error(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_error(2 * kPi - 0.2) == doctest::Approx(-0.2));
}
