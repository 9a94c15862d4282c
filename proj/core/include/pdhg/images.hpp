#pragma once

#include <cstdint>
#include <vector>

namespace pdhg {

// Row-major grayscale image with a declared pixel range.
struct Image {
  int rows = 0;
  int cols = 0;
  double lo = 0.0;
  double hi = 255.0;
  std::vector<double> px;

  std::size_t size() const { return px.size(); }
  double& at(int r, int c) { return px[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return px[static_cast<std::size_t>(r) * cols + c]; }

  static Image flat(int rows, int cols, double value = 0.0) {
    Image im;
    im.rows = rows;
    im.cols = cols;
    im.px.assign(static_cast<std::size_t>(rows) * cols, value);
    return im;
  }
};

enum class NoiseKind { gaussian, salt_pepper };

// gaussian: adds N(0, amount^2) per pixel, clamped to the declared range.
// salt_pepper: sets round(amount * pixel_count) distinct pixels to lo or hi
// with equal probability.
Image make_noise(const Image& img, NoiseKind kind, double amount,
                 std::uint64_t seed);

// Piecewise-constant test scene: a few seeded discs over a flat background.
Image phantom_circles(int rows, int cols, std::uint64_t seed);

// Smooth horizontal ramp with two seeded constant blocks, for denoising runs.
Image smooth_edges_image(int rows, int cols, std::uint64_t seed);

}  // namespace pdhg
