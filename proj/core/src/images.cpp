#include "pdhg/images.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pdhg {

Image make_noise(const Image& img, NoiseKind kind, double amount,
                 std::uint64_t seed) {
  if (amount < 0.0) throw std::invalid_argument("make_noise: amount must be nonnegative");
  Image out = img;
  std::mt19937_64 rng(seed);
  switch (kind) {
    case NoiseKind::gaussian: {
      std::normal_distribution<double> dist(0.0, amount);
      if (amount > 0.0)
        for (double& v : out.px) v = std::clamp(v + dist(rng), img.lo, img.hi);
      break;
    }
    case NoiseKind::salt_pepper: {
      if (amount > 1.0)
        throw std::invalid_argument("make_noise: salt-pepper fraction exceeds 1");
      const std::size_t n = out.px.size();
      const std::size_t count =
          static_cast<std::size_t>(std::llround(amount * static_cast<double>(n)));
      std::vector<std::size_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
      for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
      }
      std::bernoulli_distribution coin(0.5);
      for (std::size_t i = 0; i < count; ++i)
        out.px[idx[i]] = coin(rng) ? img.hi : img.lo;
      break;
    }
  }
  return out;
}

Image phantom_circles(int rows, int cols, std::uint64_t seed) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("phantom_circles: dimensions must be positive");
  Image img{rows, cols, 0.0, 255.0,
            std::vector<double>(static_cast<std::size_t>(rows) * cols, 40.0)};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.25, 0.75);
  const double intensities[2] = {220.0, 160.0};
  const double radii[2] = {0.22, 0.12};
  const double scale = std::min(rows, cols);
  for (int k = 0; k < 2; ++k) {
    double cr = pos(rng) * rows;
    double cc = pos(rng) * cols;
    double rad = radii[k] * scale;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        double dr = r + 0.5 - cr;
        double dc = c + 0.5 - cc;
        if (dr * dr + dc * dc <= rad * rad) img.at(r, c) = intensities[k];
      }
  }
  return img;
}

Image smooth_edges_image(int rows, int cols, std::uint64_t seed) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("smooth_edges_image: dimensions must be positive");
  Image img{rows, cols, 0.0, 255.0,
            std::vector<double>(static_cast<std::size_t>(rows) * cols, 0.0)};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.1, 0.55);
  double r0 = pos(rng), c0 = pos(rng), r1 = pos(rng), c1 = pos(rng);
  const double denom = std::max(cols - 1, 1);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double v = 70.0 + 110.0 * (c / denom);  // smooth ramp
      if (r >= r0 * rows && r < (r0 + 0.3) * rows && c >= c0 * cols &&
          c < (c0 + 0.35) * cols)
        v += 35.0;
      if (r >= r1 * rows && r < (r1 + 0.22) * rows && c >= c1 * cols &&
          c < (c1 + 0.28) * cols)
        v -= 25.0;
      img.at(r, c) = std::clamp(v, 40.0, 215.0);
    }
  return img;
}

}  // namespace pdhg
