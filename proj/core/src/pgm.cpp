#include "pdhg/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pdhg {

void write_pgm(const Image& img, const std::string& path) {
  if (img.rows <= 0 || img.cols <= 0 ||
      img.px.size() != static_cast<std::size_t>(img.rows) * img.cols)
    throw std::invalid_argument("write_pgm: malformed image");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  out << "P5\n" << img.cols << " " << img.rows << "\n255\n";
  const double span = img.hi - img.lo;
  const double scale = span > 0.0 ? 255.0 / span : 0.0;
  std::string bytes(img.px.size(), '\0');
  for (std::size_t i = 0; i < img.px.size(); ++i) {
    double v = (img.px[i] - img.lo) * scale;
    bytes[i] = static_cast<char>(
        static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L)));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write_pgm: write failed for " + path);
}

namespace {

int next_header_token(std::istream& in, const std::string& path) {
  // Skips whitespace and '#' comment lines, then reads one nonnegative int.
  for (;;) {
    int ch = in.peek();
    if (ch == '#') {
      std::string dummy;
      std::getline(in, dummy);
    } else if (std::isspace(ch)) {
      in.get();
    } else {
      break;
    }
  }
  int value = -1;
  in >> value;
  if (!in || value < 0)
    throw std::runtime_error("read_pgm: malformed header in " + path);
  return value;
}

}  // namespace

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm: cannot open " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5')
    throw std::runtime_error("read_pgm: not a binary PGM (P5): " + path);
  int cols = next_header_token(in, path);
  int rows = next_header_token(in, path);
  int maxval = next_header_token(in, path);
  if (cols <= 0 || rows <= 0 || maxval <= 0 || maxval > 255)
    throw std::runtime_error("read_pgm: unsupported header in " + path);
  in.get();  // single whitespace byte after maxval
  std::string bytes(static_cast<std::size_t>(rows) * cols, '\0');
  in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!in) throw std::runtime_error("read_pgm: truncated pixel data in " + path);
  Image img{rows, cols, 0.0, 255.0, std::vector<double>(bytes.size())};
  for (std::size_t i = 0; i < bytes.size(); ++i)
    img.px[i] = static_cast<double>(static_cast<unsigned char>(bytes[i]));
  return img;
}

}  // namespace pdhg
