#pragma once

// Deterministic synthetic scenes with exact ground truth. Shapes render
// in saturated class colors on a white background; truth (centroid,
// pixel area, bbox) is computed from the exact rendered coverage, so it
// remains valid even when an explicit spec makes shapes overlap.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chromaseg/classify.hpp"
#include "chromaseg/geometry.hpp"
#include "chromaseg/image.hpp"

namespace chromaseg {

enum class ShapeKind : std::uint8_t { Rectangle, Ellipse };

inline const char* shape_kind_name(ShapeKind k) {
  return k == ShapeKind::Rectangle ? "rectangle" : "ellipse";
}

/// Shape placed by the top-left corner of its bounding box.
struct ShapeSpec {
  ColorClass color = ColorClass::Black;
  ShapeKind kind = ShapeKind::Rectangle;
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  friend bool operator==(const ShapeSpec&, const ShapeSpec&) = default;
};

struct SceneSpec {
  std::uint64_t seed = 0;
  int width = 640;
  int height = 480;
  std::vector<ShapeSpec> shapes;  // empty -> auto-generate the default set
  // Constraints applied when auto-generating: minimum pairwise distance
  // between shape bboxes (coordinate delta; 11 keeps the default gap of
  // 10 from merging shapes) and minimum rendered pixel area per shape.
  int min_edge_gap = 11;
  std::int64_t min_area_px = 1112;
};

struct ShapeTruth {
  ColorClass color = ColorClass::Black;
  ShapeKind kind = ShapeKind::Rectangle;
  CentroidPx centroid;
  std::int64_t area_px = 0;
  Rect bbox;

  friend bool operator==(const ShapeTruth&, const ShapeTruth&) = default;
};

struct GroundTruth {
  std::vector<ShapeTruth> shapes;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

namespace detail {

// splitmix64; keeps scene bytes identical across standard libraries,
// unlike the std:: distributions.
class SceneRng {
 public:
  explicit SceneRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [lo, hi], inclusive.
  int range(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

 private:
  std::uint64_t state_;
};

inline bool shape_fits(const ShapeSpec& s, int width, int height) {
  return s.w >= 1 && s.h >= 1 && s.x >= 0 && s.y >= 0 && s.x + s.w <= width &&
         s.y + s.h <= height;
}

// Chebyshev distance between the nearest pixels of two shape bboxes;
// zero when they touch or overlap.
inline int bbox_gap(const ShapeSpec& a, const ShapeSpec& b) {
  const int dx = std::max({0, b.x - (a.x + a.w - 1), a.x - (b.x + b.w - 1)});
  const int dy = std::max({0, b.y - (a.y + a.h - 1), a.y - (b.y + b.h - 1)});
  return std::max(dx, dy);
}

inline bool ellipse_covers(const ShapeSpec& s, int px, int py) {
  const double cx = s.x + (s.w - 1) / 2.0;
  const double cy = s.y + (s.h - 1) / 2.0;
  const double a = (s.w - 1) / 2.0;
  const double b = (s.h - 1) / 2.0;
  const double dx = px - cx;
  const double dy = py - cy;
  double t = 0.0;
  if (a == 0.0) {
    if (dx != 0.0) return false;
  } else {
    t += (dx / a) * (dx / a);
  }
  if (b == 0.0) {
    if (dy != 0.0) return false;
  } else {
    t += (dy / b) * (dy / b);
  }
  return t <= 1.0;
}

}  // namespace detail

/// Renders the scene and derives per-shape truth from the pixels each
/// shape ends up owning (later shapes overdraw earlier ones). Throws
/// std::invalid_argument for shapes that do not fit the frame and
/// std::runtime_error when a shape is left with no visible pixels or
/// auto-generation cannot satisfy the constraints.
inline std::pair<RasterImage, GroundTruth> gen_scene(const SceneSpec& spec);

namespace detail {

inline std::vector<ShapeSpec> auto_shapes(const SceneSpec& spec) {
  // Default scene population: one green reference, one red and one blue
  // target, two black obstacles.
  const ColorClass palette[] = {ColorClass::Green, ColorClass::Red, ColorClass::Blue,
                                ColorClass::Black, ColorClass::Black};
  SceneRng rng(spec.seed);
  const int min_side = 48;
  const int max_side = std::min({120, spec.width, spec.height});
  if (max_side < min_side) {
    throw std::runtime_error("gen_scene: frame too small for auto-generated shapes");
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<ShapeSpec> shapes;
    bool ok = true;
    for (ColorClass color : palette) {
      bool placed = false;
      for (int tries = 0; tries < 200; ++tries) {
        ShapeSpec s;
        s.color = color;
        s.kind = rng.range(0, 1) == 0 ? ShapeKind::Rectangle : ShapeKind::Ellipse;
        s.w = rng.range(min_side, max_side);
        s.h = rng.range(min_side, max_side);
        s.x = rng.range(0, spec.width - s.w);
        s.y = rng.range(0, spec.height - s.h);
        bool clear = true;
        for (const ShapeSpec& other : shapes) {
          if (bbox_gap(s, other) < spec.min_edge_gap) {
            clear = false;
            break;
          }
        }
        if (clear) {
          shapes.push_back(s);
          placed = true;
          break;
        }
      }
      if (!placed) {
        ok = false;
        break;
      }
    }
    if (ok) return shapes;
  }
  throw std::runtime_error("gen_scene: could not place shapes under the given constraints");
}

}  // namespace detail

inline std::pair<RasterImage, GroundTruth> gen_scene(const SceneSpec& spec) {
  if (spec.width < 1 || spec.height < 1) {
    throw std::invalid_argument("gen_scene: frame dimensions must be >= 1");
  }
  const bool auto_generated = spec.shapes.empty();
  const std::vector<ShapeSpec> shapes =
      auto_generated ? detail::auto_shapes(spec) : spec.shapes;

  for (const ShapeSpec& s : shapes) {
    if (!detail::shape_fits(s, spec.width, spec.height)) {
      throw std::invalid_argument("gen_scene: shape does not fit within the frame");
    }
  }

  RasterImage img(spec.width, spec.height, PixelRGB{255, 255, 255});
  std::vector<std::int32_t> owner(static_cast<std::size_t>(spec.width) * spec.height, -1);

  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const ShapeSpec& s = shapes[i];
    const PixelRGB color = [&] {
      switch (s.color) {
        case ColorClass::Red: return PixelRGB{255, 0, 0};
        case ColorClass::Green: return PixelRGB{0, 255, 0};
        case ColorClass::Blue: return PixelRGB{0, 0, 255};
        case ColorClass::Black: return PixelRGB{0, 0, 0};
        default:
          throw std::invalid_argument("gen_scene: shape color must be an object class");
      }
    }();
    for (int y = s.y; y < s.y + s.h; ++y) {
      for (int x = s.x; x < s.x + s.w; ++x) {
        if (s.kind == ShapeKind::Ellipse && !detail::ellipse_covers(s, x, y)) {
          continue;
        }
        img.set_pixel(x, y, color);
        owner[static_cast<std::size_t>(y) * spec.width + x] = static_cast<std::int32_t>(i);
      }
    }
  }

  GroundTruth truth;
  truth.shapes.resize(shapes.size());
  std::vector<std::int64_t> sx(shapes.size(), 0), sy(shapes.size(), 0);
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    truth.shapes[i].color = shapes[i].color;
    truth.shapes[i].kind = shapes[i].kind;
  }
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const std::int32_t o = owner[static_cast<std::size_t>(y) * spec.width + x];
      if (o < 0) continue;
      ShapeTruth& t = truth.shapes[static_cast<std::size_t>(o)];
      if (t.area_px == 0) {
        t.bbox = Rect{x, y, x, y};
      } else {
        t.bbox.min_x = std::min(t.bbox.min_x, x);
        t.bbox.max_x = std::max(t.bbox.max_x, x);
        t.bbox.min_y = std::min(t.bbox.min_y, y);
        t.bbox.max_y = std::max(t.bbox.max_y, y);
      }
      t.area_px += 1;
      sx[static_cast<std::size_t>(o)] += x;
      sy[static_cast<std::size_t>(o)] += y;
    }
  }
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    ShapeTruth& t = truth.shapes[i];
    if (t.area_px == 0) {
      throw std::runtime_error("gen_scene: shape " + std::to_string(i) +
                               " has no visible pixels");
    }
    t.centroid = CentroidPx{static_cast<double>(sx[i]) / static_cast<double>(t.area_px),
                            static_cast<double>(sy[i]) / static_cast<double>(t.area_px)};
    if (auto_generated && t.area_px < spec.min_area_px) {
      throw std::runtime_error("gen_scene: auto-generated shape below the area floor");
    }
  }
  return {std::move(img), std::move(truth)};
}

}  // namespace chromaseg
