#pragma once

// Per-stage throughput accounting. Frames are pre-generated and
// memory-resident so the staged deltas isolate algorithm cost; the
// baseline stage only traverses pixel data. Each run times `frames`
// frames on a monotonic clock after a short untimed warmup, and the
// cross-run summary is the arithmetic mean of the unrounded per-run fps
// values.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chromaseg/pipeline.hpp"
#include "chromaseg/scene.hpp"

namespace chromaseg {

enum class StageSet : std::uint8_t { Baseline, Classify, ClassifySegment, Full };

inline const char* stage_set_name(StageSet s) {
  switch (s) {
    case StageSet::Baseline: return "baseline";
    case StageSet::Classify: return "classify";
    case StageSet::ClassifySegment: return "classify+segment";
    case StageSet::Full: return "full";
  }
  return "full";
}

inline StageSet parse_stage_set(const std::string& name) {
  if (name == "baseline") return StageSet::Baseline;
  if (name == "classify") return StageSet::Classify;
  if (name == "classify+segment") return StageSet::ClassifySegment;
  if (name == "full") return StageSet::Full;
  throw std::invalid_argument("unknown stage set '" + name +
                              "' (want baseline|classify|classify+segment|full)");
}

struct BenchRecord {
  double elapsed_s = 0.0;
  std::int64_t frames = 0;
  double fps = 0.0;
  double sampling_s = 0.0;
};

inline BenchRecord make_bench_record(double elapsed_s, std::int64_t frames) {
  if (frames < 1) throw std::invalid_argument("bench: need frames >= 1");
  if (!(elapsed_s > 0.0)) throw std::invalid_argument("bench: need elapsed > 0");
  BenchRecord r;
  r.elapsed_s = elapsed_s;
  r.frames = frames;
  r.fps = static_cast<double>(frames) / elapsed_s;
  r.sampling_s = 1.0 / r.fps;
  return r;
}

struct BenchSummary {
  std::string stage_set;
  double mean_fps = 0.0;
  std::optional<double> delta_fps;         // baseline mean minus this mean
  std::optional<double> percent_overhead;  // delta / baseline * 100
};

/// Mean of the unrounded per-run fps values.
inline double summarize(std::span<const BenchRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  double sum = 0.0;
  for (const BenchRecord& r : records) sum += r.fps;
  return sum / static_cast<double>(records.size());
}

/// Cost of a variant against the baseline: (delta fps, percent).
inline std::pair<double, double> overhead(double baseline_mean, double variant_mean) {
  if (!(baseline_mean > 0.0)) throw std::invalid_argument("overhead: baseline must be > 0");
  const double delta = baseline_mean - variant_mean;
  return {delta, delta / baseline_mean * 100.0};
}

struct BenchConfig {
  std::int64_t frames = 60;
  int runs = 10;
  int warmup_frames = 5;
  SceneSpec scene;
  PipelineConfig pipeline;
};

namespace detail {

inline void benchmark_sink(std::uint64_t v) {
  static volatile std::uint64_t sink = 0;
  sink = v;
}

inline std::uint64_t traverse_frame(const RasterImage& img) {
  std::uint64_t acc = 0;
  for (std::uint8_t byte : img.data()) acc += byte;
  return acc;
}

inline std::uint64_t process_frame(StageSet stage, const RasterImage& img,
                                   const PipelineConfig& cfg) {
  switch (stage) {
    case StageSet::Baseline:
      return traverse_frame(img);
    case StageSet::Classify: {
      const ClassMask mask = classify_image(img, cfg.classifier, cfg.threads);
      return static_cast<std::uint64_t>(mask.classes.back());
    }
    case StageSet::ClassifySegment: {
      const ClassMask mask = classify_image(img, cfg.classifier, cfg.threads);
      const std::vector<Blob> blobs = segment(mask, cfg.segmentation);
      return blobs.size();
    }
    case StageSet::Full: {
      const PipelineResult result = run_pipeline(img, cfg, "bench");
      return result.report.objects.size() +
             static_cast<std::uint64_t>(result.annotated.data().back());
    }
  }
  return 0;
}

}  // namespace detail

/// Runs `runs` timed measurements of `frames` frames each through the
/// selected stages. Runs execute strictly sequentially.
inline std::vector<BenchRecord> run_bench(StageSet stage, const BenchConfig& cfg) {
  if (cfg.frames < 1) throw std::invalid_argument("bench: need frames >= 1");
  if (cfg.runs < 1) throw std::invalid_argument("bench: need runs >= 1");
  cfg.pipeline.validate();

  // A small pool of distinct frames, cycled through the measurement.
  const int pool_size = static_cast<int>(std::min<std::int64_t>(cfg.frames, 8));
  std::vector<RasterImage> pool;
  pool.reserve(static_cast<std::size_t>(pool_size));
  for (int i = 0; i < pool_size; ++i) {
    SceneSpec variant = cfg.scene;
    variant.seed = cfg.scene.seed + static_cast<std::uint64_t>(i);
    pool.push_back(gen_scene(variant).first);
  }

  std::vector<BenchRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.runs));
  for (int run = 0; run < cfg.runs; ++run) {
    for (int i = 0; i < cfg.warmup_frames; ++i) {
      detail::benchmark_sink(
          detail::process_frame(stage, pool[static_cast<std::size_t>(i % pool_size)], cfg.pipeline));
    }
    std::uint64_t acc = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::int64_t i = 0; i < cfg.frames; ++i) {
      acc += detail::process_frame(stage, pool[static_cast<std::size_t>(i % pool_size)],
                                   cfg.pipeline);
    }
    const auto stop = std::chrono::steady_clock::now();
    detail::benchmark_sink(acc);
    const double elapsed = std::chrono::duration<double>(stop - start).count();
    records.push_back(make_bench_record(std::max(elapsed, 1e-9), cfg.frames));
  }
  return records;
}

/// CSV rows matching the measurement tables: elapsed_s, frames, fps,
/// sampling_s.
inline std::string bench_csv(std::span<const BenchRecord> records) {
  std::string out = "elapsed_s,frames,fps,sampling_s\n";
  char line[128];
  for (const BenchRecord& r : records) {
    std::snprintf(line, sizeof(line), "%.6f,%lld,%.4f,%.6f\n", r.elapsed_s,
                  static_cast<long long>(r.frames), r.fps, r.sampling_s);
    out += line;
  }
  return out;
}

}  // namespace chromaseg
