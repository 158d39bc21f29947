#pragma once

// End-to-end pipeline: classify -> segment -> measure -> pick reference
// -> distances -> annotate. One invocation is deterministic for a given
// image and configuration, including the annotated bytes.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chromaseg/classify.hpp"
#include "chromaseg/geometry.hpp"
#include "chromaseg/image.hpp"
#include "chromaseg/report.hpp"
#include "chromaseg/segment.hpp"

namespace chromaseg {

struct PipelineConfig {
  ClassifierConfig classifier;
  SegmentationConfig segmentation;
  Calibration calibration;
  bool equalize = false;   // optional pre-filter, off by default
  bool all_pairs = false;  // distances for every object pair instead of reference->red/blue
  int threads = 1;

  void validate() const {
    classifier.validate();
    segmentation.validate();
    calibration.validate();
    if (threads < 1) throw std::invalid_argument("pipeline: need threads >= 1");
  }
};

/// The reference object is the largest-area Green blob; ties break to
/// the lower id. Empty when the scene has no green object.
inline std::optional<int> select_reference(const std::vector<ObjectRecord>& objects) {
  std::optional<int> best;
  std::int64_t best_area = -1;
  for (const ObjectRecord& o : objects) {
    if (o.color != ColorClass::Green) continue;
    if (o.area_px > best_area) {
      best_area = o.area_px;
      best = o.id;
    }
  }
  return best;
}

namespace detail {

// Annotation palette. The saturated fills are what classified pixels are
// rewritten to; cross tints and the box gray are chosen so they classify
// to the same class as the cell they cover under default thresholds.
inline PixelRGB saturated_color(ColorClass c) {
  switch (c) {
    case ColorClass::Red: return PixelRGB{255, 0, 0};
    case ColorClass::Green: return PixelRGB{0, 255, 0};
    case ColorClass::Blue: return PixelRGB{0, 0, 255};
    case ColorClass::Black: return PixelRGB{0, 0, 0};
    default: return PixelRGB{255, 255, 255};
  }
}

inline PixelRGB cross_tint(ColorClass c) {
  switch (c) {
    case ColorClass::Red: return PixelRGB{255, 96, 96};
    case ColorClass::Green: return PixelRGB{96, 255, 96};
    case ColorClass::Blue: return PixelRGB{96, 96, 255};
    default: return PixelRGB{40, 40, 40};  // Black objects
  }
}

constexpr PixelRGB kBoxGray{200, 200, 200};

}  // namespace detail

/// Renders the report onto a copy of the image: object-class pixels are
/// recolored to their class's saturated color, every Black object gets a
/// one-pixel rectangle outline around its bbox expanded by one (clamped
/// to the frame), and a 3x3 cross marks each centroid. Decorations never
/// repaint another object's pixels: the outline lands only on Background
/// cells and the cross only on the object's own cells.
inline RasterImage annotate(const RasterImage& img, const ClassMask& mask,
                            const SceneReport& report) {
  RasterImage out = img;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const ColorClass c = mask.at(x, y);
      if (is_object_class(c)) {
        out.set_pixel(x, y, detail::saturated_color(c));
      }
    }
  }

  const auto put_if = [&](int x, int y, ColorClass want, PixelRGB color) {
    if (x < 0 || x >= mask.width || y < 0 || y >= mask.height) return;
    if (mask.at(x, y) == want) out.set_pixel(x, y, color);
  };

  for (const ObjectRecord& o : report.objects) {
    if (o.color != ColorClass::Black) continue;
    const int x0 = o.bbox.min_x - 1;
    const int y0 = o.bbox.min_y - 1;
    const int x1 = o.bbox.max_x + 1;
    const int y1 = o.bbox.max_y + 1;
    for (int x = x0; x <= x1; ++x) {
      put_if(x, y0, ColorClass::Background, detail::kBoxGray);
      put_if(x, y1, ColorClass::Background, detail::kBoxGray);
    }
    for (int y = y0; y <= y1; ++y) {
      put_if(x0, y, ColorClass::Background, detail::kBoxGray);
      put_if(x1, y, ColorClass::Background, detail::kBoxGray);
    }
  }

  for (const ObjectRecord& o : report.objects) {
    const int cx = static_cast<int>(round_half_up(o.centroid_px.x));
    const int cy = static_cast<int>(round_half_up(o.centroid_px.y));
    const PixelRGB tint = detail::cross_tint(o.color);
    put_if(cx, cy, o.color, tint);
    put_if(cx - 1, cy, o.color, tint);
    put_if(cx + 1, cy, o.color, tint);
    put_if(cx, cy - 1, o.color, tint);
    put_if(cx, cy + 1, o.color, tint);
  }
  return out;
}

/// Convenience overload that re-derives the mask from the image.
inline RasterImage annotate(const RasterImage& img, const SceneReport& report,
                            const ClassifierConfig& cfg) {
  return annotate(img, classify_image(img, cfg), report);
}

struct PipelineResult {
  SceneReport report;
  RasterImage annotated;
};

inline PipelineResult run_pipeline(const RasterImage& img, const PipelineConfig& cfg,
                                   std::string_view source = "memory") {
  cfg.validate();
  const RasterImage* input = &img;
  std::optional<RasterImage> equalized;
  if (cfg.equalize) {
    equalized = equalize_histogram(img);
    input = &*equalized;
  }

  const ClassMask mask = classify_image(*input, cfg.classifier, cfg.threads);
  const std::vector<Blob> blobs = segment(mask, cfg.segmentation);

  SceneReport report;
  report.frame_width = img.width();
  report.frame_height = img.height();
  report.source = std::string(source);
  report.calibration = cfg.calibration;
  report.objects.reserve(blobs.size());
  for (const Blob& b : blobs) {
    ObjectRecord o;
    o.id = b.id;
    o.color = b.color;
    o.centroid_px = centroid(b);
    o.centroid_mm_x = px_to_mm(o.centroid_px.x, cfg.calibration);
    o.centroid_mm_y = px_to_mm(o.centroid_px.y, cfg.calibration);
    o.bbox = bbox(b);
    o.area_px = b.pixel_count;
    o.area_mm2 = area_mm2(b.pixel_count, cfg.calibration);
    report.objects.push_back(std::move(o));
  }

  report.reference_id = select_reference(report.objects);

  const auto record_distance = [&](const ObjectRecord& from, const ObjectRecord& to) {
    DistanceRecord d;
    d.from_id = from.id;
    d.to_id = to.id;
    d.px = distance_px(from.centroid_px, to.centroid_px);
    d.mm = px_to_mm(d.px, cfg.calibration);
    d.relative = relative_position(from.centroid_px, to.centroid_px);
    report.distances.push_back(d);
  };

  if (cfg.all_pairs) {
    for (std::size_t i = 0; i < report.objects.size(); ++i) {
      for (std::size_t k = i + 1; k < report.objects.size(); ++k) {
        record_distance(report.objects[i], report.objects[k]);
      }
    }
  } else if (report.reference_id.has_value()) {
    const auto ref = std::find_if(report.objects.begin(), report.objects.end(),
                                  [&](const ObjectRecord& o) {
                                    return o.id == *report.reference_id;
                                  });
    for (const ObjectRecord& o : report.objects) {
      if (o.color == ColorClass::Red || o.color == ColorClass::Blue) {
        record_distance(*ref, o);
      }
    }
  }

  RasterImage annotated = annotate(*input, mask, report);
  return PipelineResult{std::move(report), std::move(annotated)};
}

}  // namespace chromaseg
