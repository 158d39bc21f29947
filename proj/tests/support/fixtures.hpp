#pragma once

// Shared test helpers: ASCII-art masks, seeded random masks and images,
// and blob sanity checks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chromaseg/classify.hpp"
#include "chromaseg/image.hpp"
#include "chromaseg/segment.hpp"

namespace testsupport {

// '.' background, 'u' unclassified, 'r' 'g' 'b' 'k' object classes.
inline chromaseg::ClassMask mask_from_art(const std::vector<std::string>& rows) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.front().size());
  chromaseg::ClassMask mask(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      chromaseg::ColorClass c = chromaseg::ColorClass::Background;
      switch (rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]) {
        case 'r': c = chromaseg::ColorClass::Red; break;
        case 'g': c = chromaseg::ColorClass::Green; break;
        case 'b': c = chromaseg::ColorClass::Blue; break;
        case 'k': c = chromaseg::ColorClass::Black; break;
        case 'u': c = chromaseg::ColorClass::Unclassified; break;
        default: break;
      }
      mask.set(x, y, c);
    }
  }
  return mask;
}

inline void fill_rect(chromaseg::ClassMask& mask, int x0, int y0, int w, int h,
                      chromaseg::ColorClass c) {
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) {
      mask.set(x, y, c);
    }
  }
}

// Sparse pixel soup: object density low enough that the O(P^2) oracle
// stays cheap.
inline chromaseg::ClassMask random_sparse_mask(std::mt19937_64& rng, int w, int h,
                                               double object_density) {
  chromaseg::ClassMask mask(w, h);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> cls(0, 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (coin(rng) < object_density) {
        mask.set(x, y, static_cast<chromaseg::ColorClass>(cls(rng)));
      }
    }
  }
  return mask;
}

// A few random same-or-mixed color rectangles, possibly overlapping.
inline chromaseg::ClassMask random_rect_mask(std::mt19937_64& rng, int w, int h) {
  chromaseg::ClassMask mask(w, h);
  std::uniform_int_distribution<int> nrects(1, 6);
  std::uniform_int_distribution<int> cls(0, 3);
  const int n = nrects(rng);
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<int> side(2, std::min(24, std::min(w, h)));
    const int rw = side(rng);
    const int rh = side(rng);
    std::uniform_int_distribution<int> px(0, w - rw);
    std::uniform_int_distribution<int> py(0, h - rh);
    fill_rect(mask, px(rng), py(rng), rw, rh, static_cast<chromaseg::ColorClass>(cls(rng)));
  }
  return mask;
}

inline chromaseg::RasterImage random_image(std::mt19937_64& rng, int w, int h) {
  std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h * 3);
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& v : data) v = static_cast<std::uint8_t>(byte(rng));
  return chromaseg::RasterImage(w, h, std::move(data));
}

inline std::int64_t count_object_pixels(const chromaseg::ClassMask& mask) {
  std::int64_t n = 0;
  for (chromaseg::ColorClass c : mask.classes) {
    if (chromaseg::is_object_class(c)) ++n;
  }
  return n;
}

inline bool blob_invariants_hold(const chromaseg::Blob& b) {
  if (b.pixel_count < 1) return false;
  if (b.min_x > b.max_x || b.min_y > b.max_y) return false;
  const std::int64_t box_area = static_cast<std::int64_t>(b.max_x - b.min_x + 1) *
                                (b.max_y - b.min_y + 1);
  if (b.pixel_count > box_area) return false;
  if (b.sum_x < b.pixel_count * b.min_x || b.sum_x > b.pixel_count * b.max_x) return false;
  if (b.sum_y < b.pixel_count * b.min_y || b.sum_y > b.pixel_count * b.max_y) return false;
  return chromaseg::is_object_class(b.color);
}

}  // namespace testsupport
