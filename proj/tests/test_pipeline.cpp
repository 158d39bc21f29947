#include "chromaseg/pipeline.hpp"

#include <gtest/gtest.h>

#include <array>
#include <map>

#include <json.hpp>

#include "chromaseg/scene.hpp"
#include "support/fixtures.hpp"

namespace chromaseg {
namespace {

PipelineConfig default_pipeline() {
  return PipelineConfig{};
}

SceneSpec explicit_scene(std::vector<ShapeSpec> shapes, int w = 640, int h = 480) {
  SceneSpec spec;
  spec.width = w;
  spec.height = h;
  spec.shapes = std::move(shapes);
  return spec;
}

std::map<ColorClass, std::int64_t> class_counts(const ClassMask& mask) {
  std::map<ColorClass, std::int64_t> counts;
  for (ColorClass c : mask.classes) ++counts[c];
  return counts;
}

TEST(Pipeline, EmptySceneYieldsEmptyReport) {
  const RasterImage white(64, 48, PixelRGB{255, 255, 255});
  const PipelineResult result = run_pipeline(white, default_pipeline(), "blank");
  EXPECT_TRUE(result.report.objects.empty());
  EXPECT_FALSE(result.report.reference_id.has_value());
  EXPECT_TRUE(result.report.distances.empty());
  EXPECT_EQ(result.report.frame_width, 64);
  EXPECT_EQ(result.report.frame_height, 48);
  EXPECT_EQ(result.report.source, "blank");
  EXPECT_EQ(result.annotated, white);  // nothing to draw
}

TEST(Pipeline, GreenAndRedSceneMeasuresGroundTruth) {
  const auto [img, truth] = gen_scene(explicit_scene({
      ShapeSpec{ColorClass::Green, ShapeKind::Rectangle, 50, 60, 60, 60},
      ShapeSpec{ColorClass::Red, ShapeKind::Rectangle, 300, 200, 80, 50},
  }));
  const PipelineResult result = run_pipeline(img, default_pipeline());
  ASSERT_EQ(result.report.objects.size(), 2u);
  ASSERT_TRUE(result.report.reference_id.has_value());

  const ObjectRecord* green = nullptr;
  const ObjectRecord* red = nullptr;
  for (const ObjectRecord& o : result.report.objects) {
    if (o.color == ColorClass::Green) green = &o;
    if (o.color == ColorClass::Red) red = &o;
  }
  ASSERT_NE(green, nullptr);
  ASSERT_NE(red, nullptr);
  EXPECT_EQ(*result.report.reference_id, green->id);

  EXPECT_NEAR(green->centroid_px.x, truth.shapes[0].centroid.x, 1e-9);
  EXPECT_NEAR(green->centroid_px.y, truth.shapes[0].centroid.y, 1e-9);
  EXPECT_EQ(green->area_px, truth.shapes[0].area_px);
  EXPECT_EQ(green->bbox, truth.shapes[0].bbox);
  EXPECT_DOUBLE_EQ(green->area_mm2, static_cast<double>(green->area_px) * 2.25);

  ASSERT_EQ(result.report.distances.size(), 1u);
  const DistanceRecord& d = result.report.distances[0];
  EXPECT_EQ(d.from_id, green->id);
  EXPECT_EQ(d.to_id, red->id);
  const double expected =
      distance_px(truth.shapes[0].centroid, truth.shapes[1].centroid);
  EXPECT_NEAR(d.px, expected, 0.5);
  EXPECT_DOUBLE_EQ(d.mm, d.px * 1.5);
}

TEST(Pipeline, BlackObstaclesStaySeparate) {
  // Nearest black columns 49 and 69: coordinate delta 20 > gap 10.
  const auto [img, truth] = gen_scene(explicit_scene({
      ShapeSpec{ColorClass::Black, ShapeKind::Rectangle, 10, 10, 40, 40},
      ShapeSpec{ColorClass::Black, ShapeKind::Rectangle, 69, 10, 40, 40},
      ShapeSpec{ColorClass::Red, ShapeKind::Rectangle, 200, 200, 50, 50},
  }));
  const PipelineResult result = run_pipeline(img, default_pipeline());
  ASSERT_EQ(result.report.objects.size(), 3u);
  int blacks = 0;
  std::vector<Rect> black_boxes;
  for (const ObjectRecord& o : result.report.objects) {
    if (o.color == ColorClass::Black) {
      ++blacks;
      black_boxes.push_back(o.bbox);
    }
  }
  EXPECT_EQ(blacks, 2);
  ASSERT_EQ(black_boxes.size(), 2u);
  EXPECT_EQ(black_boxes[0], (Rect{10, 10, 49, 49}));
  EXPECT_EQ(black_boxes[1], (Rect{69, 10, 108, 49}));
  // No reference object: no distances.
  EXPECT_FALSE(result.report.reference_id.has_value());
  EXPECT_TRUE(result.report.distances.empty());
}

ObjectRecord make_object(int id, ColorClass color, std::int64_t area) {
  ObjectRecord o;
  o.id = id;
  o.color = color;
  o.area_px = area;
  return o;
}

TEST(SelectReference, LargestGreenWinsTiesToLowerId) {
  EXPECT_FALSE(select_reference({}).has_value());
  EXPECT_FALSE(
      select_reference({make_object(0, ColorClass::Red, 5000)}).has_value());

  const auto one = select_reference({make_object(0, ColorClass::Green, 2000)});
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ(*one, 0);

  const auto larger = select_reference({make_object(0, ColorClass::Green, 2000),
                                        make_object(1, ColorClass::Green, 3000)});
  ASSERT_TRUE(larger.has_value());
  EXPECT_EQ(*larger, 1);

  const auto tie = select_reference({make_object(3, ColorClass::Green, 3000),
                                     make_object(5, ColorClass::Green, 3000)});
  ASSERT_TRUE(tie.has_value());
  EXPECT_EQ(*tie, 3);
}

TEST(Pipeline, DistancesCoverEveryRedAndBlueTarget) {
  const auto [img, truth] = gen_scene(explicit_scene({
      ShapeSpec{ColorClass::Green, ShapeKind::Rectangle, 20, 20, 50, 50},
      ShapeSpec{ColorClass::Red, ShapeKind::Rectangle, 120, 20, 50, 50},
      ShapeSpec{ColorClass::Red, ShapeKind::Rectangle, 220, 20, 50, 50},
      ShapeSpec{ColorClass::Blue, ShapeKind::Rectangle, 320, 20, 50, 50},
      ShapeSpec{ColorClass::Black, ShapeKind::Rectangle, 420, 20, 50, 50},
  }));
  PipelineConfig cfg = default_pipeline();
  const PipelineResult result = run_pipeline(img, cfg);
  ASSERT_EQ(result.report.objects.size(), 5u);
  ASSERT_TRUE(result.report.reference_id.has_value());
  ASSERT_EQ(result.report.distances.size(), 3u);
  for (const DistanceRecord& d : result.report.distances) {
    EXPECT_EQ(d.from_id, *result.report.reference_id);
    EXPECT_EQ(d.relative.horizontal, Horizontal::Right);
    EXPECT_EQ(d.relative.vertical, Vertical::Aligned);
  }

  cfg.all_pairs = true;
  const PipelineResult all = run_pipeline(img, cfg);
  EXPECT_EQ(all.report.distances.size(), 10u);  // C(5,2)
}

TEST(Annotate, RecolorsObjectsAndOutlinesObstacles) {
  const auto [img, truth] = gen_scene(explicit_scene(
      {ShapeSpec{ColorClass::Black, ShapeKind::Rectangle, 5, 5, 10, 10}}, 30, 30));
  PipelineConfig cfg = default_pipeline();
  cfg.segmentation.min_area_px = 1;
  const PipelineResult result = run_pipeline(img, cfg);
  ASSERT_EQ(result.report.objects.size(), 1u);
  const RasterImage& out = result.annotated;

  // Outline ring sits exactly one pixel outside the bbox.
  const PixelRGB gray{200, 200, 200};
  for (int x = 4; x <= 15; ++x) {
    EXPECT_EQ(out.get_pixel(x, 4), gray) << "top ring x=" << x;
    EXPECT_EQ(out.get_pixel(x, 15), gray) << "bottom ring x=" << x;
  }
  for (int y = 4; y <= 15; ++y) {
    EXPECT_EQ(out.get_pixel(4, y), gray) << "left ring y=" << y;
    EXPECT_EQ(out.get_pixel(15, y), gray) << "right ring y=" << y;
  }
  // Just outside the ring the background is untouched.
  EXPECT_EQ(out.get_pixel(3, 3), (PixelRGB{255, 255, 255}));
  EXPECT_EQ(out.get_pixel(16, 16), (PixelRGB{255, 255, 255}));
  // Interior pixels keep the saturated fill except the centroid cross.
  EXPECT_EQ(out.get_pixel(5, 5), (PixelRGB{0, 0, 0}));
  const PixelRGB cross{40, 40, 40};
  EXPECT_EQ(out.get_pixel(10, 10), cross);  // centroid (9.5, 9.5) rounds half-up
  EXPECT_EQ(out.get_pixel(9, 10), cross);
  EXPECT_EQ(out.get_pixel(11, 10), cross);
  EXPECT_EQ(out.get_pixel(10, 9), cross);
  EXPECT_EQ(out.get_pixel(10, 11), cross);
}

TEST(Annotate, RingClampsAtFrameEdge) {
  const auto [img, truth] = gen_scene(explicit_scene(
      {ShapeSpec{ColorClass::Black, ShapeKind::Rectangle, 0, 0, 12, 12}}, 20, 20));
  PipelineConfig cfg = default_pipeline();
  cfg.segmentation.min_area_px = 1;
  const PipelineResult result = run_pipeline(img, cfg);
  const RasterImage& out = result.annotated;
  EXPECT_EQ(out.get_pixel(12, 0), (PixelRGB{200, 200, 200}));
  EXPECT_EQ(out.get_pixel(0, 12), (PixelRGB{200, 200, 200}));
  EXPECT_EQ(out.get_pixel(0, 0), (PixelRGB{0, 0, 0}));
}

TEST(Annotate, RedObjectPixelsBecomeSaturated) {
  RasterImage img(40, 40, PixelRGB{255, 255, 255});
  for (int y = 5; y < 20; ++y) {
    for (int x = 5; x < 20; ++x) {
      img.set_pixel(x, y, PixelRGB{200, 30, 40});  // dull red
    }
  }
  PipelineConfig cfg = default_pipeline();
  cfg.segmentation.min_area_px = 1;
  const PipelineResult result = run_pipeline(img, cfg);
  ASSERT_EQ(result.report.objects.size(), 1u);
  EXPECT_EQ(result.report.objects[0].color, ColorClass::Red);
  int saturated = 0;
  int tinted = 0;
  for (int y = 5; y < 20; ++y) {
    for (int x = 5; x < 20; ++x) {
      const PixelRGB p = result.annotated.get_pixel(x, y);
      if (p == PixelRGB{255, 0, 0}) ++saturated;
      if (p == PixelRGB{255, 96, 96}) ++tinted;
    }
  }
  EXPECT_EQ(saturated + tinted, 225);
  EXPECT_EQ(tinted, 5);  // the centroid cross
}

TEST(Annotate, ClassCountsSurviveReclassification) {
  SceneSpec spec;
  spec.seed = 77;
  const auto [img, truth] = gen_scene(spec);
  const PipelineConfig cfg = default_pipeline();
  const PipelineResult result = run_pipeline(img, cfg);

  const auto before = class_counts(classify_image(img, cfg.classifier));
  const auto after = class_counts(classify_image(result.annotated, cfg.classifier));
  EXPECT_EQ(before, after);
}

TEST(Annotate, MaskOverloadMatchesConvenienceOverload) {
  const auto [img, truth] = gen_scene(explicit_scene(
      {ShapeSpec{ColorClass::Blue, ShapeKind::Ellipse, 10, 10, 41, 31}}, 80, 60));
  PipelineConfig cfg = default_pipeline();
  cfg.segmentation.min_area_px = 1;
  const PipelineResult result = run_pipeline(img, cfg);
  const ClassMask mask = classify_image(img, cfg.classifier);
  EXPECT_EQ(annotate(img, mask, result.report),
            annotate(img, result.report, cfg.classifier));
}

TEST(Pipeline, ObjectRecordsRederivableFromBlobs) {
  SceneSpec spec;
  spec.seed = 99;
  const auto [img, truth] = gen_scene(spec);
  const PipelineConfig cfg = default_pipeline();
  const PipelineResult result = run_pipeline(img, cfg);

  const ClassMask mask = classify_image(img, cfg.classifier);
  const std::vector<Blob> blobs = segment(mask, cfg.segmentation);
  ASSERT_EQ(result.report.objects.size(), blobs.size());
  for (std::size_t i = 0; i < blobs.size(); ++i) {
    const ObjectRecord& o = result.report.objects[i];
    const Blob& b = blobs[i];
    EXPECT_EQ(o.id, b.id);
    EXPECT_EQ(o.color, b.color);
    EXPECT_EQ(o.area_px, b.pixel_count);
    EXPECT_EQ(o.bbox, bbox(b));
    EXPECT_DOUBLE_EQ(o.centroid_px.x, centroid(b).x);
    EXPECT_DOUBLE_EQ(o.centroid_px.y, centroid(b).y);
    EXPECT_DOUBLE_EQ(o.area_mm2, area_mm2(b.pixel_count, cfg.calibration));
    EXPECT_DOUBLE_EQ(o.centroid_mm_x, o.centroid_px.x * 1.5);
  }
}

TEST(Pipeline, EqualizePreFilterKeepsSaturatedScenesIntact) {
  // Channels of a generated scene hold only {0, 255}, which per-channel
  // equalization maps to themselves, so the report must not change.
  SceneSpec spec;
  spec.seed = 31;
  const auto [img, truth] = gen_scene(spec);
  PipelineConfig cfg = default_pipeline();
  const PipelineResult plain = run_pipeline(img, cfg, "s");
  cfg.equalize = true;
  const PipelineResult equalized = run_pipeline(img, cfg, "s");
  EXPECT_EQ(serialize_report(plain.report), serialize_report(equalized.report));
  EXPECT_EQ(plain.annotated, equalized.annotated);
}

TEST(Pipeline, DeterministicReportAndImageBytes) {
  SceneSpec spec;
  spec.seed = 1234;
  const auto [img, truth] = gen_scene(spec);
  PipelineConfig cfg = default_pipeline();

  const PipelineResult a = run_pipeline(img, cfg, "scene");
  const PipelineResult b = run_pipeline(img, cfg, "scene");
  EXPECT_EQ(serialize_report(a.report), serialize_report(b.report));
  EXPECT_EQ(save_ppm(a.annotated), save_ppm(b.annotated));

  cfg.threads = 4;
  const PipelineResult c = run_pipeline(img, cfg, "scene");
  EXPECT_EQ(serialize_report(a.report), serialize_report(c.report));
  EXPECT_EQ(save_ppm(a.annotated), save_ppm(c.annotated));
}

TEST(ReportJson, RoundingRulesAndSchema) {
  SceneReport report;
  report.frame_width = 640;
  report.frame_height = 480;
  report.source = "fig";
  ObjectRecord green;
  green.id = 0;
  green.color = ColorClass::Green;
  green.centroid_px = {296.0, 453.0};
  green.bbox = {280, 430, 312, 476};
  green.area_px = 1500;
  green.area_mm2 = 3375.0;
  ObjectRecord red;
  red.id = 1;
  red.color = ColorClass::Red;
  red.centroid_px = {427.4, 414.5};
  red.bbox = {400, 390, 454, 440};
  red.area_px = 2000;
  red.area_mm2 = 4500.0;
  report.objects = {green, red};
  report.reference_id = 0;
  DistanceRecord d;
  d.from_id = 0;
  d.to_id = 1;
  d.px = distance_px(green.centroid_px, {427.0, 415.0});
  d.mm = d.px * 1.5;
  d.relative = relative_position(green.centroid_px, {427.0, 415.0});
  report.distances = {d};

  const nlohmann::json j = nlohmann::json::parse(serialize_report(report));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["frame"]["w"], 640);
  EXPECT_EQ(j["frame"]["source"], "fig");
  EXPECT_EQ(j["objects"][0]["color"], "green");
  EXPECT_EQ(j["objects"][0]["centroid_px"][0], 296);
  EXPECT_DOUBLE_EQ(j["objects"][0]["centroid_mm"][0].get<double>(), 444.0);
  EXPECT_EQ(j["objects"][1]["centroid_px"][0], 427);  // 427.4 rounds down
  EXPECT_EQ(j["objects"][1]["centroid_px"][1], 415);  // 414.5 rounds half-up
  EXPECT_EQ(j["reference_id"], 0);
  EXPECT_EQ(j["distances"][0]["px"], 136);
  EXPECT_DOUBLE_EQ(j["distances"][0]["mm"].get<double>(), 204.0);
  EXPECT_EQ(j["distances"][0]["horizontal"], "right");
  EXPECT_EQ(j["distances"][0]["vertical"], "above");

  report.reference_id.reset();
  report.distances.clear();
  const nlohmann::json empty = nlohmann::json::parse(serialize_report(report));
  EXPECT_TRUE(empty["reference_id"].is_null());
  EXPECT_TRUE(empty["distances"].empty());
}

}  // namespace
}  // namespace chromaseg
