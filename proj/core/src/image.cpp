#include "bongard/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "bongard/error.hpp"

namespace bongard {

BinaryImage::BinaryImage(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw InputError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

std::size_t BinaryImage::foreground_count() const noexcept {
  return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open image '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class PnmReader {
 public:
  explicit PnmReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  // Next whitespace-delimited header token, skipping '#' comments.
  long next_int() {
    skip_space();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) throw InputError("truncated PNM header");
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 24)) throw InputError("PNM header value out of range");
    }
    return value;
  }

  // Single-digit sample (P1 allows "0101" without separators).
  int next_bit() {
    skip_space();
    if (pos_ >= bytes_.size()) throw InputError("truncated PBM data");
    char c = static_cast<char>(bytes_[pos_++]);
    if (c != '0' && c != '1') throw InputError("invalid PBM sample");
    return c - '0';
  }

  void skip_single_whitespace() {
    if (pos_ < bytes_.size() && std::isspace(bytes_[pos_])) ++pos_;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::uint8_t byte() { return bytes_[pos_++]; }

 private:
  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 2;
};

bool is_png(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

BinaryImage decode_png(const std::vector<std::uint8_t>& bytes, int threshold) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw InputError(std::string("cannot decode PNG: ") + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw InputError("zero-area PNG");
  }
  std::vector<std::uint8_t> gray(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, gray.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw InputError("cannot decode PNG: " + msg);
  }
  BinaryImage out(static_cast<int>(image.width), static_cast<int>(image.height));
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      out.set(x, y, gray[static_cast<std::size_t>(y) * image.width + static_cast<std::size_t>(x)] < threshold);
    }
  }
  return out;
}

}  // namespace

BinaryImage decode_pnm(const std::vector<std::uint8_t>& bytes, int threshold) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw InputError("not a PNM file");
  const char kind = static_cast<char>(bytes[1]);
  if (kind != '1' && kind != '2' && kind != '4' && kind != '5') {
    throw InputError(std::string("unsupported PNM variant P") + kind);
  }
  PnmReader reader(bytes);
  const long width = reader.next_int();
  const long height = reader.next_int();
  if (width <= 0 || height <= 0) throw InputError("zero-area PNM");
  const bool bitmap = kind == '1' || kind == '4';
  const long maxval = bitmap ? 1 : reader.next_int();
  if (maxval <= 0 || maxval > 65535) throw InputError("invalid PNM maxval");

  BinaryImage out(static_cast<int>(width), static_cast<int>(height));
  // Threshold is expressed on the 0..255 scale.
  auto foreground = [&](long sample) { return sample * 255 < static_cast<long>(threshold) * maxval; };

  if (kind == '1') {
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) out.set(x, y, reader.next_bit() == 1);
  } else if (kind == '2') {
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) out.set(x, y, foreground(reader.next_int()));
  } else if (kind == '4') {
    reader.skip_single_whitespace();
    const long row_bytes = (width + 7) / 8;
    if (reader.remaining() < static_cast<std::size_t>(row_bytes * height)) throw InputError("truncated PBM data");
    for (int y = 0; y < height; ++y) {
      std::vector<std::uint8_t> row(static_cast<std::size_t>(row_bytes));
      for (auto& b : row) b = reader.byte();
      for (int x = 0; x < width; ++x) out.set(x, y, (row[static_cast<std::size_t>(x / 8)] >> (7 - x % 8)) & 1);
    }
  } else {
    reader.skip_single_whitespace();
    const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
    if (reader.remaining() < sample_bytes * static_cast<std::size_t>(width * height)) {
      throw InputError("truncated PGM data");
    }
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        long sample = reader.byte();
        if (sample_bytes == 2) sample = (sample << 8) | reader.byte();
        out.set(x, y, foreground(sample));
      }
    }
  }
  return out;
}

BinaryImage load_binary_image(const std::filesystem::path& path, int threshold) {
  const auto bytes = read_file(path);
  if (bytes.empty()) throw InputError("empty image file '" + path.string() + "'");
  try {
    if (is_png(bytes)) return decode_png(bytes, threshold);
    return decode_pnm(bytes, threshold);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void save_pgm(const BinaryImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) out.put(image.at(x, y) ? '\0' : static_cast<char>(255));
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

void save_png(const BinaryImage& image, const std::filesystem::path& path) {
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(image.width()) * static_cast<std::size_t>(image.height()));
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      gray[static_cast<std::size_t>(y) * static_cast<std::size_t>(image.width()) + static_cast<std::size_t>(x)] =
          image.at(x, y) ? 0 : 255;
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.string().c_str(), 0, gray.data(), 0, nullptr)) {
    throw InputError("cannot write PNG '" + path.string() + "': " + png.message);
  }
}

}  // namespace bongard
