#pragma once

// Shared option set and the key=value config file. Every tunable CLI
// flag has a config-file key of the same name; precedence is
// flag > config file > default.

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "chromaseg/classify.hpp"
#include "chromaseg/geometry.hpp"
#include "chromaseg/segment.hpp"

namespace chromaseg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  // classifier
  int min_dominant = 100;
  int dominance_margin = 50;
  int black_max = 60;
  int white_min = 180;
  // segmentation
  int gap_px = 10;
  std::int64_t min_area_px = 1112;
  // calibration
  double mm_per_px = 1.5;
  // pipeline
  bool equalize = false;
  bool all_pairs = false;
  int threads = 1;
  // scene generation
  std::uint64_t seed = 0;
  int width = 640;
  int height = 480;
  // bench
  std::string stages = "full";
  std::int64_t frames = 60;
  int runs = 10;

  ClassifierConfig classifier_config() const {
    ClassifierConfig c{min_dominant, dominance_margin, black_max, white_min};
    c.validate();
    return c;
  }

  SegmentationConfig segmentation_config() const {
    SegmentationConfig c{gap_px, min_area_px};
    c.validate();
    return c;
  }

  Calibration calibration() const {
    Calibration c = Calibration::from_mm_per_px(mm_per_px);
    c.validate();
    return c;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) {
    throw ConfigError("config: bad value '" + value + "' for key '" + key + "'");
  }
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: bad value '" + value + "' for key '" + key +
                    "' (want true|false|1|0)");
}

}  // namespace detail

inline void apply_config_entry(Options& opts, const std::string& key,
                               const std::string& value) {
  if (key == "min_dominant") opts.min_dominant = detail::parse_number<int>(key, value);
  else if (key == "dominance_margin") opts.dominance_margin = detail::parse_number<int>(key, value);
  else if (key == "black_max") opts.black_max = detail::parse_number<int>(key, value);
  else if (key == "white_min") opts.white_min = detail::parse_number<int>(key, value);
  else if (key == "gap_px") opts.gap_px = detail::parse_number<int>(key, value);
  else if (key == "min_area_px") opts.min_area_px = detail::parse_number<std::int64_t>(key, value);
  else if (key == "mm_per_px") opts.mm_per_px = detail::parse_number<double>(key, value);
  else if (key == "equalize") opts.equalize = detail::parse_bool(key, value);
  else if (key == "all_pairs") opts.all_pairs = detail::parse_bool(key, value);
  else if (key == "threads") opts.threads = detail::parse_number<int>(key, value);
  else if (key == "seed") opts.seed = detail::parse_number<std::uint64_t>(key, value);
  else if (key == "width") opts.width = detail::parse_number<int>(key, value);
  else if (key == "height") opts.height = detail::parse_number<int>(key, value);
  else if (key == "stages") opts.stages = value;
  else if (key == "frames") opts.frames = detail::parse_number<std::int64_t>(key, value);
  else if (key == "runs") opts.runs = detail::parse_number<int>(key, value);
  else throw ConfigError("config: unknown key '" + key + "'");
}

/// Parses key=value lines; blank lines and lines starting with '#' are
/// skipped. Unknown keys and malformed lines are errors.
inline void apply_config_text(Options& opts, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = detail::trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": expected key=value, got '" + stripped + "'");
    }
    const std::string key = detail::trim(stripped.substr(0, eq));
    const std::string value = detail::trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config: line " + std::to_string(lineno) + ": empty key");
    }
    apply_config_entry(opts, key, value);
  }
}

inline void apply_config_file(Options& opts, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(opts, buffer.str());
}

/// Values the user passed explicitly; only these override the config
/// file.
struct OptionOverrides {
  std::optional<int> min_dominant, dominance_margin, black_max, white_min;
  std::optional<int> gap_px;
  std::optional<std::int64_t> min_area_px;
  std::optional<double> mm_per_px;
  std::optional<bool> equalize, all_pairs;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  std::optional<int> width, height;
  std::optional<std::string> stages;
  std::optional<std::int64_t> frames;
  std::optional<int> runs;
};

inline void apply_overrides(Options& opts, const OptionOverrides& f) {
  if (f.min_dominant) opts.min_dominant = *f.min_dominant;
  if (f.dominance_margin) opts.dominance_margin = *f.dominance_margin;
  if (f.black_max) opts.black_max = *f.black_max;
  if (f.white_min) opts.white_min = *f.white_min;
  if (f.gap_px) opts.gap_px = *f.gap_px;
  if (f.min_area_px) opts.min_area_px = *f.min_area_px;
  if (f.mm_per_px) opts.mm_per_px = *f.mm_per_px;
  if (f.equalize) opts.equalize = *f.equalize;
  if (f.all_pairs) opts.all_pairs = *f.all_pairs;
  if (f.threads) opts.threads = *f.threads;
  if (f.seed) opts.seed = *f.seed;
  if (f.width) opts.width = *f.width;
  if (f.height) opts.height = *f.height;
  if (f.stages) opts.stages = *f.stages;
  if (f.frames) opts.frames = *f.frames;
  if (f.runs) opts.runs = *f.runs;
}

/// Defaults, then the config file (explicit path, else CHROMASEG_CONFIG
/// when set), then explicit flag values.
inline Options resolve_options(const std::string& config_path, const OptionOverrides& flags) {
  Options opts;
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("CHROMASEG_CONFIG")) path = env;
  }
  if (!path.empty()) {
    apply_config_file(opts, path);
  }
  apply_overrides(opts, flags);
  return opts;
}

}  // namespace chromaseg
