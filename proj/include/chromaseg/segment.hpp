#pragma once

// Gap-based segmentation: two same-class pixels belong to the same
// object iff a chain of same-class pixels connects them with every
// consecutive step within Chebyshev distance gap_px. The boundary is
// inclusive: distance == gap_px still merges. Implemented as union-find
// over classified pixels with a windowed neighbor scan.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chromaseg/classify.hpp"

namespace chromaseg {

/// One segmented object. sum_x/sum_y accumulate pixel coordinates for
/// centroid math; extents are inclusive pixel bounds.
struct Blob {
  int id = 0;
  ColorClass color = ColorClass::Unclassified;
  std::int64_t pixel_count = 0;
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;
  int min_x = 0;
  int min_y = 0;
  int max_x = 0;
  int max_y = 0;

  friend bool operator==(const Blob&, const Blob&) = default;
};

struct SegmentationConfig {
  int gap_px = 10;
  std::int64_t min_area_px = 1112;

  void validate() const {
    if (gap_px < 1) throw std::invalid_argument("segmentation: need gap_px >= 1");
    if (min_area_px < 1) throw std::invalid_argument("segmentation: need min_area_px >= 1");
  }

  friend bool operator==(const SegmentationConfig&, const SegmentationConfig&) = default;
};

/// Keeps blobs with pixel_count >= min_area_px, preserving order and ids.
inline std::vector<Blob> filter_min_area(const std::vector<Blob>& blobs,
                                         std::int64_t min_area_px) {
  std::vector<Blob> out;
  out.reserve(blobs.size());
  for (const Blob& b : blobs) {
    if (b.pixel_count >= min_area_px) out.push_back(b);
  }
  return out;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n, -1), size_(n, 0) {}

  void make_set(std::int32_t i) {
    parent_[i] = i;
    size_[i] = 1;
  }

  std::int32_t find(std::int32_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];  // path halving
      i = parent_[i];
    }
    return i;
  }

  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
};

// Aggregates components into blobs in raster order of each component's
// first pixel, drops those below min_area_px, then numbers the
// survivors 0..k-1.
inline std::vector<Blob> collect_blobs(const ClassMask& mask, UnionFind& uf,
                                       std::int64_t min_area_px) {
  std::vector<std::int32_t> root_to_blob(static_cast<std::size_t>(mask.width) * mask.height,
                                         -1);
  std::vector<Blob> blobs;
  const int w = mask.width;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < w; ++x) {
      const ColorClass c = mask.at(x, y);
      if (!is_object_class(c)) continue;
      const std::int32_t idx = y * w + x;
      const std::int32_t root = uf.find(idx);
      std::int32_t slot = root_to_blob[static_cast<std::size_t>(root)];
      if (slot < 0) {
        slot = static_cast<std::int32_t>(blobs.size());
        root_to_blob[static_cast<std::size_t>(root)] = slot;
        Blob b;
        b.color = c;
        b.min_x = b.max_x = x;
        b.min_y = b.max_y = y;
        blobs.push_back(b);
      }
      Blob& b = blobs[static_cast<std::size_t>(slot)];
      b.pixel_count += 1;
      b.sum_x += x;
      b.sum_y += y;
      b.min_x = std::min(b.min_x, x);
      b.max_x = std::max(b.max_x, x);
      b.min_y = std::min(b.min_y, y);
      b.max_y = std::max(b.max_y, y);
    }
  }
  std::vector<Blob> kept = filter_min_area(blobs, min_area_px);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    kept[i].id = static_cast<int>(i);
  }
  return kept;
}

}  // namespace detail

/// Segments the mask into blobs. Non-object pixels (Background,
/// Unclassified) are ignored; blobs below min_area_px are discarded and
/// ids run 0..k-1 in raster order of each blob's first pixel. The window
/// scan visits every unordered same-class pair within Chebyshev distance
/// gap_px exactly once, so the partition equals the transitive closure
/// of that relation.
inline std::vector<Blob> segment(const ClassMask& mask, const SegmentationConfig& cfg) {
  cfg.validate();
  const int w = mask.width;
  const int h = mask.height;
  const int gap = cfg.gap_px;
  detail::UnionFind uf(static_cast<std::size_t>(w) * h);

  for (int y = 0; y < h; ++y) {
    const ColorClass* row = &mask.classes[static_cast<std::size_t>(y) * w];
    for (int x = 0; x < w; ++x) {
      const ColorClass c = row[x];
      if (!is_object_class(c)) continue;
      const std::int32_t idx = y * w + x;
      uf.make_set(idx);
      const int y0 = std::max(0, y - gap);
      if (x > 0 && row[x - 1] == c) {
        // Continuing a same-class run: everything in this window except
        // the rightmost new column is already connected through the
        // left neighbor, which scanned the rest when it was visited.
        uf.unite(idx, idx - 1);
        const int xx = x + gap;
        if (xx < w) {
          for (int yy = y0; yy < y; ++yy) {
            if (mask.classes[static_cast<std::size_t>(yy) * w + xx] == c) {
              uf.unite(idx, yy * w + xx);
            }
          }
        }
        continue;
      }
      // Run start: earlier pixels within the gap window, i.e. full rows
      // above plus left neighbors in the current row.
      for (int yy = y0; yy <= y; ++yy) {
        const int x0 = std::max(0, x - gap);
        const int x1 = (yy == y) ? x - 1 : std::min(w - 1, x + gap);
        const ColorClass* mrow = &mask.classes[static_cast<std::size_t>(yy) * w];
        for (int xx = x0; xx <= x1; ++xx) {
          if (mrow[xx] == c) {
            uf.unite(idx, yy * w + xx);
          }
        }
      }
    }
  }
  return detail::collect_blobs(mask, uf, cfg.min_area_px);
}

}  // namespace chromaseg
