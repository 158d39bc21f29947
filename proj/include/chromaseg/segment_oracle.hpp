#pragma once

// Brute-force reference for segment(): enumerates every pair of
// classified pixels and unions the same-class pairs within Chebyshev
// distance gap_px. O(P^2) in the number of classified pixels, so inputs
// are capped at 128x128. Kept deliberately separate from segment() —
// different traversal, different aggregation — so the two can be checked
// against each other.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chromaseg/segment.hpp"

namespace chromaseg {

inline std::vector<Blob> segment_oracle(const ClassMask& mask,
                                        const SegmentationConfig& cfg) {
  cfg.validate();
  if (mask.width > 128 || mask.height > 128) {
    throw std::invalid_argument("segment_oracle: size cap is 128x128");
  }

  struct Px {
    int x, y;
    ColorClass c;
  };
  std::vector<Px> pixels;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const ColorClass c = mask.at(x, y);
      if (is_object_class(c)) pixels.push_back(Px{x, y, c});
    }
  }

  const std::size_t n = pixels.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };

  const int gap = cfg.gap_px;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pixels[i].c != pixels[j].c) continue;
      const int dx = std::abs(pixels[i].x - pixels[j].x);
      const int dy = std::abs(pixels[i].y - pixels[j].y);
      if (std::max(dx, dy) <= gap) {
        parent[find(i)] = find(j);
      }
    }
  }

  // Group pixel indices per component, ordered by first member (pixels
  // were collected in raster order).
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::int64_t> group_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<std::int64_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(group_of[root])].push_back(i);
  }

  std::vector<Blob> blobs;
  for (const auto& members : groups) {
    if (static_cast<std::int64_t>(members.size()) < cfg.min_area_px) continue;
    Blob b;
    b.id = static_cast<int>(blobs.size());
    b.color = pixels[members.front()].c;
    b.pixel_count = static_cast<std::int64_t>(members.size());
    b.min_x = b.max_x = pixels[members.front()].x;
    b.min_y = b.max_y = pixels[members.front()].y;
    for (std::size_t i : members) {
      b.sum_x += pixels[i].x;
      b.sum_y += pixels[i].y;
      b.min_x = std::min(b.min_x, pixels[i].x);
      b.max_x = std::max(b.max_x, pixels[i].x);
      b.min_y = std::min(b.min_y, pixels[i].y);
      b.max_y = std::max(b.max_y, pixels[i].y);
    }
    blobs.push_back(b);
  }
  return blobs;
}

}  // namespace chromaseg
