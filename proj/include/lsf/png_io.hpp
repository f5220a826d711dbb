#pragma once

#include <string>

#include "lsf/tensor.hpp"

namespace lsf {

// Reads an 8-bit PNG as an RGBA float image in [0,1]. RGB inputs get
// alpha = 1; palette and gray inputs are expanded.
Image read_png(const std::string& path);

// Writes an RGBA (or RGB) float image as an 8-bit PNG.
void write_png(const std::string& path, const Image& image);

}  // namespace lsf
