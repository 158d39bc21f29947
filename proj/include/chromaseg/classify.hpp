#pragma once

// Dominant-channel pixel classification. Every pixel maps to exactly one
// class; thresholds are configurable and carry the library defaults used
// throughout the CLI.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "chromaseg/image.hpp"

namespace chromaseg {

enum class ColorClass : std::uint8_t {
  Red = 0,
  Green = 1,
  Blue = 2,
  Black = 3,
  Background = 4,
  Unclassified = 5,
};

inline bool is_object_class(ColorClass c) {
  return c == ColorClass::Red || c == ColorClass::Green || c == ColorClass::Blue ||
         c == ColorClass::Black;
}

inline const char* color_class_name(ColorClass c) {
  switch (c) {
    case ColorClass::Red: return "red";
    case ColorClass::Green: return "green";
    case ColorClass::Blue: return "blue";
    case ColorClass::Black: return "black";
    case ColorClass::Background: return "background";
    case ColorClass::Unclassified: return "unclassified";
  }
  return "unclassified";
}

struct ClassifierConfig {
  int min_dominant = 100;
  int dominance_margin = 50;
  int black_max = 60;
  int white_min = 180;

  void validate() const {
    if (black_max < 0 || white_min > 255 || black_max >= white_min) {
      throw std::invalid_argument("classifier: need 0 <= black_max < white_min <= 255");
    }
    if (min_dominant <= black_max) {
      throw std::invalid_argument("classifier: need min_dominant > black_max");
    }
    if (dominance_margin < 0) {
      throw std::invalid_argument("classifier: need dominance_margin >= 0");
    }
  }

  friend bool operator==(const ClassifierConfig&, const ClassifierConfig&) = default;
};

/// Rule order: (1) all channels <= black_max -> Black; (2) all channels
/// >= white_min -> Background; (3) a single channel strictly above the
/// other two, at least min_dominant and ahead by dominance_margin, wins;
/// (4) anything else (including ties for the top channel) is
/// Unclassified. Total for every input.
inline ColorClass classify_pixel(PixelRGB p, const ClassifierConfig& cfg) {
  const int r = p.r, g = p.g, b = p.b;
  if (r <= cfg.black_max && g <= cfg.black_max && b <= cfg.black_max) {
    return ColorClass::Black;
  }
  if (r >= cfg.white_min && g >= cfg.white_min && b >= cfg.white_min) {
    return ColorClass::Background;
  }
  int dominant;
  int other;
  ColorClass cls;
  if (r > g && r > b) {
    dominant = r;
    other = g > b ? g : b;
    cls = ColorClass::Red;
  } else if (g > r && g > b) {
    dominant = g;
    other = r > b ? r : b;
    cls = ColorClass::Green;
  } else if (b > r && b > g) {
    dominant = b;
    other = r > g ? r : g;
    cls = ColorClass::Blue;
  } else {
    return ColorClass::Unclassified;  // no single dominant channel
  }
  if (dominant >= cfg.min_dominant && dominant - other >= cfg.dominance_margin) {
    return cls;
  }
  return ColorClass::Unclassified;
}

/// Per-pixel classification result grid, dimensions equal to the source.
struct ClassMask {
  int width = 0;
  int height = 0;
  std::vector<ColorClass> classes;  // row-major

  ClassMask() = default;
  ClassMask(int w, int h, ColorClass fill = ColorClass::Background)
      : width(w), height(h),
        classes(static_cast<std::size_t>(w) * h, fill) {
    if (w < 1 || h < 1) {
      throw std::invalid_argument("ClassMask: dimensions must be >= 1");
    }
  }

  ColorClass at(int x, int y) const {
    return classes[static_cast<std::size_t>(y) * width + x];
  }
  void set(int x, int y, ColorClass c) {
    classes[static_cast<std::size_t>(y) * width + x] = c;
  }

  friend bool operator==(const ClassMask&, const ClassMask&) = default;
};

namespace detail {

inline void classify_rows(const RasterImage& img, const ClassifierConfig& cfg,
                          ClassMask& mask, int y0, int y1) {
  for (int y = y0; y < y1; ++y) {
    const std::uint8_t* row = img.row(y);
    ColorClass* out = &mask.classes[static_cast<std::size_t>(y) * img.width()];
    for (int x = 0; x < img.width(); ++x) {
      const std::uint8_t* px = row + static_cast<std::size_t>(x) * 3;
      out[x] = classify_pixel(PixelRGB{px[2], px[1], px[0]}, cfg);
    }
  }
}

}  // namespace detail

/// Classifies every pixel. With threads > 1 the rows are split into
/// contiguous chunks; the result is bit-identical to sequential order.
inline ClassMask classify_image(const RasterImage& img, const ClassifierConfig& cfg,
                                int threads = 1) {
  cfg.validate();
  ClassMask mask(img.width(), img.height());
  const int n = std::max(1, std::min(threads, img.height()));
  if (n == 1) {
    detail::classify_rows(img, cfg, mask, 0, img.height());
    return mask;
  }
  std::vector<std::thread> workers;
  workers.reserve(n);
  const int rows_per = (img.height() + n - 1) / n;
  for (int t = 0; t < n; ++t) {
    const int y0 = t * rows_per;
    const int y1 = std::min(img.height(), y0 + rows_per);
    if (y0 >= y1) break;
    workers.emplace_back(detail::classify_rows, std::cref(img), std::cref(cfg),
                         std::ref(mask), y0, y1);
  }
  for (auto& w : workers) w.join();
  return mask;
}

}  // namespace chromaseg
