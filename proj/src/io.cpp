#include "ocdm/io.hpp"

#include <array>
#include <charconv>

namespace ocdm {

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ec == std::errc{} ? end : buf.data());
}

}  // namespace ocdm
