#pragma once

#include <span>
#include <string>

#include "sfht/wht.hpp"

namespace sfht {

/// Raw little-endian 64-bit floats; the length comes from the file size and
/// must be a power of two.
DenseSignal read_signal_f64le(const std::string& path);
void write_signal_f64le(const std::string& path, std::span<const double> x);

}  // namespace sfht
