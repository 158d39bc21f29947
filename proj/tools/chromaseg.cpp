// chromaseg: color-blob detection, segmentation, and measurement on
// raster images, with a synthetic scene generator and a throughput
// benchmark. Exit codes: 0 success, 2 I/O or decode failure, 3 invalid
// configuration or scene spec.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chromaseg/bench.hpp"
#include "chromaseg/config.hpp"
#include "chromaseg/image.hpp"
#include "chromaseg/pipeline.hpp"
#include "chromaseg/report.hpp"
#include "chromaseg/scene.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 3;

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoFailure("failed reading '" + path + "'");
  return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoFailure("failed writing '" + path + "'");
}

void write_file(const std::string& path, const std::string& text) {
  write_file(path, std::span<const std::uint8_t>(
                       reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

chromaseg::RasterImage load_image_bytes(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "CSRW", 4) == 0) {
    return chromaseg::load_raw(bytes);
  }
  return chromaseg::load_ppm(bytes);
}

using FlagOverrides = chromaseg::OptionOverrides;

chromaseg::PipelineConfig pipeline_config(const chromaseg::Options& opts) {
  chromaseg::PipelineConfig cfg;
  cfg.classifier = opts.classifier_config();
  cfg.segmentation = opts.segmentation_config();
  cfg.calibration = opts.calibration();
  cfg.equalize = opts.equalize;
  cfg.all_pairs = opts.all_pairs;
  cfg.threads = opts.threads;
  cfg.validate();
  return cfg;
}

chromaseg::ShapeSpec parse_shape_flag(const std::string& text) {
  // color:kind:x:y:w:h, e.g. green:rect:100:100:50:50
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 6) {
    throw chromaseg::ConfigError("--shape wants color:kind:x:y:w:h, got '" + text + "'");
  }
  chromaseg::ShapeSpec s;
  if (parts[0] == "red") s.color = chromaseg::ColorClass::Red;
  else if (parts[0] == "green") s.color = chromaseg::ColorClass::Green;
  else if (parts[0] == "blue") s.color = chromaseg::ColorClass::Blue;
  else if (parts[0] == "black") s.color = chromaseg::ColorClass::Black;
  else throw chromaseg::ConfigError("--shape color must be red|green|blue|black");
  if (parts[1] == "rect" || parts[1] == "rectangle") s.kind = chromaseg::ShapeKind::Rectangle;
  else if (parts[1] == "ellipse") s.kind = chromaseg::ShapeKind::Ellipse;
  else throw chromaseg::ConfigError("--shape kind must be rect|ellipse");
  try {
    s.x = std::stoi(parts[2]);
    s.y = std::stoi(parts[3]);
    s.w = std::stoi(parts[4]);
    s.h = std::stoi(parts[5]);
  } catch (const std::exception&) {
    throw chromaseg::ConfigError("--shape coordinates must be integers: '" + text + "'");
  }
  return s;
}

std::string truth_path_for(const std::string& out_path) {
  const std::size_t dot = out_path.find_last_of('.');
  const std::size_t slash = out_path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out_path + ".truth.json";
  }
  return out_path.substr(0, dot) + ".truth.json";
}

std::string ground_truth_json(const chromaseg::SceneSpec& spec,
                              const chromaseg::GroundTruth& truth) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["seed"] = spec.seed;
  j["frame"] = {{"w", spec.width}, {"h", spec.height}};
  j["shapes"] = nlohmann::ordered_json::array();
  for (const chromaseg::ShapeTruth& t : truth.shapes) {
    nlohmann::ordered_json js;
    js["color"] = chromaseg::color_class_name(t.color);
    js["kind"] = chromaseg::shape_kind_name(t.kind);
    js["centroid"] = {t.centroid.x, t.centroid.y};
    js["area_px"] = t.area_px;
    js["bbox"] = {t.bbox.min_x, t.bbox.min_y, t.bbox.max_x, t.bbox.max_y};
    j["shapes"].push_back(std::move(js));
  }
  return j.dump(2) + "\n";
}

int run_segment(const std::string& input, const std::string& config_path,
                const FlagOverrides& flags, const std::string& report_path,
                const std::string& annotate_path) {
  chromaseg::Options opts;
  chromaseg::PipelineConfig cfg;
  try {
    opts = resolve_options(config_path, flags);
    cfg = pipeline_config(opts);
  } catch (const std::exception& e) {
    std::cerr << "chromaseg: " << e.what() << "\n";
    return kExitConfig;
  }

  chromaseg::PipelineResult result{chromaseg::SceneReport{}, chromaseg::RasterImage(1, 1)};
  try {
    const std::vector<std::uint8_t> bytes = read_file(input);
    const chromaseg::RasterImage img = load_image_bytes(bytes);
    result = chromaseg::run_pipeline(img, cfg, input);
  } catch (const IoFailure& e) {
    std::cerr << "chromaseg: " << e.what() << "\n";
    return kExitIo;
  } catch (const chromaseg::DecodeError& e) {
    std::cerr << "chromaseg: " << input << ": " << e.what() << "\n";
    return kExitIo;
  }

  try {
    const std::string report = chromaseg::serialize_report(result.report);
    if (report_path.empty()) {
      std::cout << report;
    } else {
      write_file(report_path, report);
    }
    if (!annotate_path.empty()) {
      write_file(annotate_path, chromaseg::save_ppm(result.annotated));
    }
  } catch (const IoFailure& e) {
    std::cerr << "chromaseg: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int run_gen_scene(const std::string& config_path, const FlagOverrides& flags,
                  const std::vector<std::string>& shape_flags, const std::string& out_path,
                  const std::string& truth_path) {
  chromaseg::SceneSpec spec;
  try {
    const chromaseg::Options opts = resolve_options(config_path, flags);
    spec.seed = opts.seed;
    spec.width = opts.width;
    spec.height = opts.height;
    spec.min_edge_gap = opts.gap_px + 1;
    spec.min_area_px = opts.min_area_px;
    for (const std::string& s : shape_flags) {
      spec.shapes.push_back(parse_shape_flag(s));
    }
  } catch (const std::exception& e) {
    std::cerr << "chromaseg: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const auto [img, truth] = chromaseg::gen_scene(spec);
    const bool raw = out_path.size() >= 5 &&
                     out_path.compare(out_path.size() - 5, 5, ".csrw") == 0;
    write_file(out_path, raw ? chromaseg::save_raw(img) : chromaseg::save_ppm(img));
    const std::string tpath = truth_path.empty() ? truth_path_for(out_path) : truth_path;
    write_file(tpath, ground_truth_json(spec, truth));
  } catch (const IoFailure& e) {
    std::cerr << "chromaseg: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "chromaseg: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

int run_bench_cmd(const std::string& config_path, const FlagOverrides& flags,
                  const std::string& csv_path, const std::string& summary_path) {
  chromaseg::BenchConfig bench;
  std::vector<chromaseg::StageSet> stages;
  try {
    const chromaseg::Options opts = resolve_options(config_path, flags);
    bench.frames = opts.frames;
    bench.runs = opts.runs;
    bench.pipeline = pipeline_config(opts);
    bench.scene.seed = opts.seed;
    bench.scene.width = opts.width;
    bench.scene.height = opts.height;
    bench.scene.min_edge_gap = opts.gap_px + 1;
    bench.scene.min_area_px = opts.min_area_px;
    if (bench.frames < 1) throw chromaseg::ConfigError("bench: need frames >= 1");
    if (bench.runs < 1) throw chromaseg::ConfigError("bench: need runs >= 1");
    std::stringstream ss(opts.stages);
    std::string name;
    while (std::getline(ss, name, ',')) {
      stages.push_back(chromaseg::parse_stage_set(name));
    }
    if (stages.empty()) throw chromaseg::ConfigError("bench: no stage sets given");
  } catch (const std::exception& e) {
    std::cerr << "chromaseg: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    std::vector<chromaseg::BenchSummary> summaries;
    std::optional<double> baseline_mean;
    for (const chromaseg::StageSet stage : stages) {
      const std::vector<chromaseg::BenchRecord> records = chromaseg::run_bench(stage, bench);
      const double mean = chromaseg::summarize(records);
      chromaseg::BenchSummary summary;
      summary.stage_set = chromaseg::stage_set_name(stage);
      summary.mean_fps = mean;
      if (stage == chromaseg::StageSet::Baseline) {
        baseline_mean = mean;
        summary.delta_fps = 0.0;
        summary.percent_overhead = 0.0;
      } else if (baseline_mean) {
        const auto [delta, percent] = chromaseg::overhead(*baseline_mean, mean);
        summary.delta_fps = delta;
        summary.percent_overhead = percent;
        std::cerr << "overhead " << summary.stage_set << " vs baseline: " << delta
                  << " fps (" << percent << "%)\n";
      }
      summaries.push_back(summary);

      const std::string csv = chromaseg::bench_csv(records);
      if (csv_path.empty()) {
        std::cout << "# stage_set=" << summary.stage_set << "\n" << csv;
      } else if (stages.size() == 1) {
        write_file(csv_path, csv);
      } else {
        // One table per stage set; inject the stage name before the
        // extension so multi-stage runs do not clobber one file.
        const std::size_t dot = csv_path.find_last_of('.');
        const std::string path =
            dot == std::string::npos
                ? csv_path + "." + summary.stage_set
                : csv_path.substr(0, dot) + "." + summary.stage_set + csv_path.substr(dot);
        write_file(path, csv);
      }
    }

    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const chromaseg::BenchSummary& s : summaries) {
      nlohmann::ordered_json js;
      js["stage_set"] = s.stage_set;
      js["mean_fps"] = s.mean_fps;
      if (s.delta_fps) js["delta_fps"] = *s.delta_fps; else js["delta_fps"] = nullptr;
      if (s.percent_overhead) js["percent"] = *s.percent_overhead; else js["percent"] = nullptr;
      j.push_back(std::move(js));
    }
    const std::string summary_text = j.dump(2) + "\n";
    if (summary_path.empty()) {
      std::cout << summary_text;
    } else {
      write_file(summary_path, summary_text);
    }
  } catch (const IoFailure& e) {
    std::cerr << "chromaseg: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "chromaseg: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"color blob detection, segmentation and measurement"};
  app.require_subcommand(1);

  std::string config_path;
  FlagOverrides flags;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "key=value config file (or set CHROMASEG_CONFIG)");
  };
  const auto add_classify_flags = [&](CLI::App* cmd) {
    cmd->add_option("--min-dominant", flags.min_dominant, "dominant channel floor (0-255)");
    cmd->add_option("--dominance-margin", flags.dominance_margin,
                    "required lead over the other channels");
    cmd->add_option("--black-max", flags.black_max, "black ceiling (0-255)");
    cmd->add_option("--white-min", flags.white_min, "background floor (0-255)");
    cmd->add_option("--gap-px", flags.gap_px, "merge distance between same-class pixels");
    cmd->add_option("--min-area-px", flags.min_area_px, "minimum object area in pixels");
    cmd->add_option("--mm-per-px", flags.mm_per_px, "pixel side length in millimeters");
    cmd->add_option("--threads", flags.threads, "classification worker threads");
  };

  CLI::App* seg = app.add_subcommand("segment", "detect and measure objects in an image");
  std::string input_path, report_path, annotate_path;
  bool equalize_flag = false;
  bool all_pairs_flag = false;
  seg->add_option("input", input_path, "input image (PPM P6 or CSRW raw)")->required();
  seg->add_option("--report", report_path, "write the JSON report here instead of stdout");
  seg->add_option("--annotate", annotate_path, "write the annotated PPM here");
  add_common(seg);
  add_classify_flags(seg);
  CLI::Option* eq_opt =
      seg->add_flag("--equalize", equalize_flag, "equalize histograms before classifying");
  CLI::Option* ap_opt =
      seg->add_flag("--all-pairs", all_pairs_flag, "report distances for every object pair");

  CLI::App* gen = app.add_subcommand("gen-scene", "generate a synthetic scene with ground truth");
  std::string out_path = "scene.ppm", truth_path;
  std::vector<std::string> shape_flags;
  gen->add_option("--out", out_path, "output image path (.ppm or .csrw)");
  gen->add_option("--truth", truth_path, "ground-truth JSON path (default: <out>.truth.json)");
  gen->add_option("--seed", flags.seed, "generator seed");
  gen->add_option("--width", flags.width, "frame width in pixels");
  gen->add_option("--height", flags.height, "frame height in pixels");
  gen->add_option("--shape", shape_flags,
                  "explicit shape color:kind:x:y:w:h (repeatable; omit to auto-generate)");
  gen->add_option("--gap-px", flags.gap_px, "same-class separation the auto layout must beat");
  gen->add_option("--min-area-px", flags.min_area_px, "area floor for auto-generated shapes");
  add_common(gen);

  CLI::App* bench = app.add_subcommand("bench", "measure per-stage frame throughput");
  std::string csv_path, summary_path;
  bench->add_option("--stages", flags.stages,
                    "comma list of baseline|classify|classify+segment|full");
  bench->add_option("--frames", flags.frames, "frames per run");
  bench->add_option("--runs", flags.runs, "number of runs");
  bench->add_option("--csv", csv_path, "write per-run CSV here instead of stdout");
  bench->add_option("--summary", summary_path, "write summary JSON here instead of stdout");
  bench->add_option("--seed", flags.seed, "bench scene seed");
  bench->add_option("--width", flags.width, "bench frame width");
  bench->add_option("--height", flags.height, "bench frame height");
  add_common(bench);
  add_classify_flags(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (eq_opt->count() > 0) flags.equalize = equalize_flag;
  if (ap_opt->count() > 0) flags.all_pairs = all_pairs_flag;

  if (seg->parsed()) {
    return run_segment(input_path, config_path, flags, report_path, annotate_path);
  }
  if (gen->parsed()) {
    return run_gen_scene(config_path, flags, shape_flags, out_path, truth_path);
  }
  return run_bench_cmd(config_path, flags, csv_path, summary_path);
}
