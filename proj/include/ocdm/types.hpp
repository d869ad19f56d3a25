#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ocdm {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Length-N vector of complex baseband samples (x(i), y(i), r(i) or z(i)).
using ComplexBlock = CVector;

inline constexpr double kPi = std::numbers::pi;

enum class Errc {
  invalid_size,
  taps_exceed_block,
  dimension,
  framing,
  range,
  no_null_space,
  no_excess_cp,
  singular_channel,
  combinatorial_blowup,
  undersampled,
  degenerate_configuration,
  configuration,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Wraps an angle into [-pi, pi).
double wrap_to_pi(double w);

/// Wraps a CFO error into (-pi, pi]; used before squaring.
double wrap_error(double diff);

}  // namespace ocdm
