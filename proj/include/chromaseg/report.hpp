#pragma once

// Scene report types and the versioned JSON serialization (schema 1).
//
// Display rounding: pixel quantities are integers rounded half-up; the
// millimeter value shown next to a pixel value is derived from the
// already-rounded pixel value, so every displayed px/mm pair is
// calibration-consistent. Millimeter values carry one decimal.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chromaseg/classify.hpp"
#include "chromaseg/geometry.hpp"

namespace chromaseg {

struct ObjectRecord {
  int id = 0;
  ColorClass color = ColorClass::Unclassified;
  CentroidPx centroid_px;
  double centroid_mm_x = 0.0;
  double centroid_mm_y = 0.0;
  Rect bbox;
  std::int64_t area_px = 0;
  double area_mm2 = 0.0;

  friend bool operator==(const ObjectRecord&, const ObjectRecord&) = default;
};

struct DistanceRecord {
  int from_id = 0;
  int to_id = 0;
  double px = 0.0;
  double mm = 0.0;
  RelativePosition relative;

  friend bool operator==(const DistanceRecord&, const DistanceRecord&) = default;
};

struct SceneReport {
  int frame_width = 0;
  int frame_height = 0;
  std::string source;
  Calibration calibration;
  std::vector<ObjectRecord> objects;
  std::optional<int> reference_id;
  std::vector<DistanceRecord> distances;

  friend bool operator==(const SceneReport&, const SceneReport&) = default;
};

inline std::int64_t round_half_up(double v) {
  return static_cast<std::int64_t>(std::floor(v + 0.5));
}

inline double round_1dp(double v) {
  return std::floor(v * 10.0 + 0.5) / 10.0;
}

inline nlohmann::ordered_json report_to_json(const SceneReport& report) {
  const double mm_per_px = report.calibration.mm_per_px;
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["frame"] = {{"w", report.frame_width},
                {"h", report.frame_height},
                {"source", report.source}};
  j["objects"] = nlohmann::ordered_json::array();
  for (const ObjectRecord& o : report.objects) {
    const std::int64_t cx = round_half_up(o.centroid_px.x);
    const std::int64_t cy = round_half_up(o.centroid_px.y);
    nlohmann::ordered_json jo;
    jo["id"] = o.id;
    jo["color"] = color_class_name(o.color);
    jo["centroid_px"] = {cx, cy};
    jo["centroid_mm"] = {round_1dp(static_cast<double>(cx) * mm_per_px),
                         round_1dp(static_cast<double>(cy) * mm_per_px)};
    jo["bbox"] = {o.bbox.min_x, o.bbox.min_y, o.bbox.max_x, o.bbox.max_y};
    jo["area_px"] = o.area_px;
    jo["area_mm2"] = round_1dp(o.area_mm2);
    j["objects"].push_back(std::move(jo));
  }
  if (report.reference_id.has_value()) {
    j["reference_id"] = *report.reference_id;
  } else {
    j["reference_id"] = nullptr;
  }
  j["distances"] = nlohmann::ordered_json::array();
  for (const DistanceRecord& d : report.distances) {
    const std::int64_t px = round_half_up(d.px);
    nlohmann::ordered_json jd;
    jd["from"] = d.from_id;
    jd["to"] = d.to_id;
    jd["px"] = px;
    jd["mm"] = round_1dp(static_cast<double>(px) * mm_per_px);
    jd["horizontal"] = horizontal_name(d.relative.horizontal);
    jd["vertical"] = vertical_name(d.relative.vertical);
    j["distances"].push_back(std::move(jd));
  }
  return j;
}

/// Deterministic bytes for a given report: fixed key order, two-space
/// indent, trailing newline.
inline std::string serialize_report(const SceneReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

}  // namespace chromaseg
