#pragma once

#include <string>

#include "pdhg/images.hpp"

namespace pdhg {

// Binary PGM (P5, maxval 255).  Pixels are mapped linearly from the image's
// declared [lo, hi] range onto 0..255 and rounded.
void write_pgm(const Image& img, const std::string& path);

// Reads a binary P5 file; the result has range [0, 255].
Image read_pgm(const std::string& path);

}  // namespace pdhg
