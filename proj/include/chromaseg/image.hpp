#pragma once

// 8-bit three-channel raster images with BGR interleaved storage, plus
// bit-exact PPM (P6) and raw-dump (CSRW) codecs and the optional
// per-channel histogram equalization filter.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chromaseg {

/// Thrown when image bytes cannot be decoded (bad magic, malformed
/// header, unsupported maxval, truncated payload).
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One pixel in presentation order, regardless of storage order.
struct PixelRGB {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const PixelRGB&, const PixelRGB&) = default;
};

/// Row-major raster, 3 bytes per pixel interleaved as blue, green, red.
/// Instances are treated as immutable once built; mutation happens only
/// while a single owner is constructing (or annotating a copy of) one.
class RasterImage {
 public:
  RasterImage(int width, int height, PixelRGB fill = PixelRGB{0, 0, 0})
      : width_(width), height_(height) {
    check_dims(width, height);
    data_.resize(static_cast<std::size_t>(width) * height * 3);
    for (std::size_t i = 0; i < data_.size(); i += 3) {
      data_[i] = fill.b;
      data_[i + 1] = fill.g;
      data_[i + 2] = fill.r;
    }
  }

  RasterImage(int width, int height, std::vector<std::uint8_t> bgr_data)
      : width_(width), height_(height), data_(std::move(bgr_data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * height * 3) {
      throw std::invalid_argument("RasterImage: data length must be width*height*3");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }

  PixelRGB get_pixel(int x, int y) const {
    check_bounds(x, y);
    const std::uint8_t* p = &data_[offset(x, y)];
    return PixelRGB{p[2], p[1], p[0]};
  }

  void set_pixel(int x, int y, PixelRGB px) {
    check_bounds(x, y);
    std::uint8_t* p = &data_[offset(x, y)];
    p[0] = px.b;
    p[1] = px.g;
    p[2] = px.r;
  }

  /// Raw BGR bytes, row-major. Length is exactly width*height*3.
  std::span<const std::uint8_t> data() const { return data_; }

  const std::uint8_t* row(int y) const {
    return &data_[static_cast<std::size_t>(y) * width_ * 3];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  static void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
      throw std::invalid_argument("RasterImage: dimensions must be >= 1");
    }
    if (static_cast<std::int64_t>(width) * height > (std::int64_t{1} << 28)) {
      throw std::invalid_argument("RasterImage: dimensions too large");
    }
  }

  void check_bounds(int x, int y) const {
    if (x < 0 || x >= width_ || y < 0 || y >= height_) {
      throw std::out_of_range("pixel coordinates out of bounds");
    }
  }

  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;  // BGR interleaved
};

namespace detail {

// Header tokenizer for PPM: skips whitespace and '#' comments.
inline bool next_header_token(std::span<const std::uint8_t> bytes, std::size_t& pos,
                              std::string& token) {
  token.clear();
  while (pos < bytes.size()) {
    const char c = static_cast<char>(bytes[pos]);
    if (c == '#') {
      while (pos < bytes.size() && static_cast<char>(bytes[pos]) != '\n') ++pos;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
      ++pos;
    } else {
      break;
    }
  }
  while (pos < bytes.size()) {
    const char c = static_cast<char>(bytes[pos]);
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v' || c == '#') {
      break;
    }
    token.push_back(c);
    ++pos;
  }
  return !token.empty();
}

inline int parse_header_int(const std::string& token, const char* what) {
  if (token.empty() || token.size() > 9 ||
      !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw DecodeError(std::string("ppm: malformed header: bad ") + what + " '" + token + "'");
  }
  return std::stoi(token);
}

}  // namespace detail

/// Decodes a binary PPM (P6, maxval 255). Sample order in the file is
/// RGB; storage is converted to BGR.
inline RasterImage load_ppm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  std::string tok;
  if (!detail::next_header_token(bytes, pos, tok)) {
    throw DecodeError("ppm: malformed header: empty input");
  }
  if (tok != "P6") {
    throw DecodeError("ppm: unsupported magic '" + tok + "' (want P6)");
  }
  std::string wtok, htok, mtok;
  if (!detail::next_header_token(bytes, pos, wtok) ||
      !detail::next_header_token(bytes, pos, htok) ||
      !detail::next_header_token(bytes, pos, mtok)) {
    throw DecodeError("ppm: malformed header: missing dimensions or maxval");
  }
  const int width = detail::parse_header_int(wtok, "width");
  const int height = detail::parse_header_int(htok, "height");
  const int maxval = detail::parse_header_int(mtok, "maxval");
  if (width < 1 || height < 1) {
    throw DecodeError("ppm: malformed header: dimensions must be >= 1");
  }
  if (maxval != 255) {
    throw DecodeError("ppm: unsupported maxval " + std::to_string(maxval) + " (want 255)");
  }
  // Exactly one whitespace byte separates the header from the samples.
  if (pos >= bytes.size()) {
    throw DecodeError("ppm: truncated pixel data");
  }
  ++pos;
  const std::size_t need = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() - pos < need) {
    throw DecodeError("ppm: truncated pixel data: have " +
                      std::to_string(bytes.size() - pos) + " bytes, need " +
                      std::to_string(need));
  }
  std::vector<std::uint8_t> data(need);
  const std::uint8_t* src = bytes.data() + pos;
  for (std::size_t i = 0; i < need; i += 3) {
    data[i] = src[i + 2];      // B
    data[i + 1] = src[i + 1];  // G
    data[i + 2] = src[i];      // R
  }
  return RasterImage(width, height, std::move(data));
}

/// Canonical P6 writer: "P6\n<w> <h>\n255\n" followed by RGB samples.
/// Output bytes are deterministic; load_ppm(save_ppm(img)) == img.
inline std::vector<std::uint8_t> save_ppm(const RasterImage& img) {
  const std::string header = "P6\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  const std::span<const std::uint8_t> bgr = img.data();
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + bgr.size());
  out.insert(out.end(), header.begin(), header.end());
  for (std::size_t i = 0; i < bgr.size(); i += 3) {
    out.push_back(bgr[i + 2]);  // R
    out.push_back(bgr[i + 1]);  // G
    out.push_back(bgr[i]);      // B
  }
  return out;
}

// Raw dump format used by the bench harness: "CSRW" magic, two 32-bit
// little-endian dims, then the BGR payload verbatim.
inline std::vector<std::uint8_t> save_raw(const RasterImage& img) {
  std::vector<std::uint8_t> out;
  out.reserve(12 + img.data().size());
  const char magic[4] = {'C', 'S', 'R', 'W'};
  out.insert(out.end(), magic, magic + 4);
  auto put_u32le = [&out](std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
  };
  put_u32le(static_cast<std::uint32_t>(img.width()));
  put_u32le(static_cast<std::uint32_t>(img.height()));
  out.insert(out.end(), img.data().begin(), img.data().end());
  return out;
}

inline RasterImage load_raw(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "CSRW", 4) != 0) {
    throw DecodeError("raw: bad magic (want CSRW)");
  }
  auto get_u32le = [&bytes](std::size_t at) {
    return static_cast<std::uint32_t>(bytes[at]) |
           (static_cast<std::uint32_t>(bytes[at + 1]) << 8) |
           (static_cast<std::uint32_t>(bytes[at + 2]) << 16) |
           (static_cast<std::uint32_t>(bytes[at + 3]) << 24);
  };
  const std::uint32_t width = get_u32le(4);
  const std::uint32_t height = get_u32le(8);
  if (width < 1 || height < 1 || width > (1u << 20) || height > (1u << 20)) {
    throw DecodeError("raw: bad dimensions");
  }
  const std::size_t need = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() - 12 < need) {
    throw DecodeError("raw: truncated payload");
  }
  std::vector<std::uint8_t> data(bytes.begin() + 12, bytes.begin() + 12 + need);
  return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

/// Per-channel cumulative-distribution equalization:
///   v' = round((cdf(v) - cdf_min) / (N - cdf_min) * 255)
/// A channel holding a single distinct intensity is returned unchanged
/// (the formula's denominator vanishes there). Dimensions are preserved
/// and per-channel value ordering is monotone.
inline RasterImage equalize_histogram(const RasterImage& img) {
  const std::span<const std::uint8_t> src = img.data();
  const std::size_t pixels = src.size() / 3;
  std::vector<std::uint8_t> out(src.begin(), src.end());

  for (int c = 0; c < 3; ++c) {
    std::array<std::uint64_t, 256> hist{};
    for (std::size_t i = c; i < src.size(); i += 3) {
      ++hist[src[i]];
    }
    std::array<std::uint64_t, 256> cdf{};
    std::uint64_t running = 0;
    std::uint64_t cdf_min = 0;
    for (int v = 0; v < 256; ++v) {
      running += hist[v];
      cdf[v] = running;
      if (cdf_min == 0 && running > 0) cdf_min = running;
    }
    if (cdf_min == pixels) continue;  // single distinct intensity
    std::array<std::uint8_t, 256> lut{};
    const double denom = static_cast<double>(pixels - cdf_min);
    for (int v = 0; v < 256; ++v) {
      if (hist[v] == 0) continue;
      const double mapped = (static_cast<double>(cdf[v] - cdf_min) / denom) * 255.0;
      lut[v] = static_cast<std::uint8_t>(std::lround(mapped));
    }
    for (std::size_t i = c; i < out.size(); i += 3) {
      out[i] = lut[src[i]];
    }
  }
  return RasterImage(img.width(), img.height(), std::move(out));
}

}  // namespace chromaseg
