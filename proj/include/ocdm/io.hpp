#pragma once

#include <string>

namespace ocdm {

/// Shortest round-trip decimal representation; stable across runs.
std::string format_number(double v);

}  // namespace ocdm
