#pragma once

// Centroids, bounding boxes, distances, and the pixel-to-millimeter
// calibration. All functions are pure.

#include <cmath>
#include <stdexcept>

#include "chromaseg/segment.hpp"

namespace chromaseg {

struct CentroidPx {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const CentroidPx&, const CentroidPx&) = default;
};

struct Rect {
  int min_x = 0;
  int min_y = 0;
  int max_x = 0;
  int max_y = 0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Physical meaning of one pixel: 1.5 mm side, 2.25 mm^2 area by default.
struct Calibration {
  double mm_per_px = 1.5;
  double mm2_per_px = 2.25;

  static Calibration from_mm_per_px(double mm) {
    return Calibration{mm, mm * mm};
  }

  void validate() const {
    if (!(mm_per_px > 0.0) || !(mm2_per_px > 0.0)) {
      throw std::invalid_argument("calibration: scales must be positive");
    }
    if (std::abs(mm2_per_px - mm_per_px * mm_per_px) > 1e-9) {
      throw std::invalid_argument("calibration: mm2_per_px must equal mm_per_px^2");
    }
  }

  friend bool operator==(const Calibration&, const Calibration&) = default;
};

enum class Horizontal : std::uint8_t { Left, Right, Aligned };
enum class Vertical : std::uint8_t { Above, Below, Aligned };

struct RelativePosition {
  Horizontal horizontal = Horizontal::Aligned;
  Vertical vertical = Vertical::Aligned;

  friend bool operator==(const RelativePosition&, const RelativePosition&) = default;
};

inline const char* horizontal_name(Horizontal h) {
  switch (h) {
    case Horizontal::Left: return "left";
    case Horizontal::Right: return "right";
    case Horizontal::Aligned: return "aligned";
  }
  return "aligned";
}

inline const char* vertical_name(Vertical v) {
  switch (v) {
    case Vertical::Above: return "above";
    case Vertical::Below: return "below";
    case Vertical::Aligned: return "aligned";
  }
  return "aligned";
}

/// Coordinate averages (sum_x/count, sum_y/count), exact real division.
inline CentroidPx centroid(const Blob& b) {
  return CentroidPx{static_cast<double>(b.sum_x) / static_cast<double>(b.pixel_count),
                    static_cast<double>(b.sum_y) / static_cast<double>(b.pixel_count)};
}

inline Rect bbox(const Blob& b) {
  return Rect{b.min_x, b.min_y, b.max_x, b.max_y};
}

inline double distance_px(CentroidPx a, CentroidPx b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

inline double px_to_mm(double d, const Calibration& cal) {
  if (d < 0.0) throw std::invalid_argument("px_to_mm: length must be >= 0");
  return d * cal.mm_per_px;
}

inline double area_mm2(std::int64_t pixel_count, const Calibration& cal) {
  if (pixel_count < 0) throw std::invalid_argument("area_mm2: count must be >= 0");
  return static_cast<double>(pixel_count) * cal.mm2_per_px;
}

/// Where the target sits relative to the reference in the image frame
/// (x grows rightward, y grows downward). Exact coordinate ties report
/// Aligned.
inline RelativePosition relative_position(CentroidPx reference, CentroidPx target) {
  RelativePosition rel;
  if (target.x < reference.x) {
    rel.horizontal = Horizontal::Left;
  } else if (target.x > reference.x) {
    rel.horizontal = Horizontal::Right;
  }
  if (target.y < reference.y) {
    rel.vertical = Vertical::Above;
  } else if (target.y > reference.y) {
    rel.vertical = Vertical::Below;
  }
  return rel;
}

}  // namespace chromaseg
