#include "chromaseg/config.hpp"

#include <gtest/gtest.h>

namespace chromaseg {
namespace {

TEST(ConfigFile, ParsesEveryKey) {
  Options opts;
  apply_config_text(opts,
                    "# classifier\n"
                    "min_dominant = 120\n"
                    "dominance_margin=40\n"
                    "black_max = 50\n"
                    "white_min = 200\n"
                    "\n"
                    "gap_px = 8\n"
                    "min_area_px = 500\n"
                    "mm_per_px = 2.0\n"
                    "equalize = true\n"
                    "all_pairs = 1\n"
                    "threads = 3\n"
                    "seed = 900\n"
                    "width = 800\n"
                    "height = 600\n"
                    "stages = baseline,full\n"
                    "frames = 30\n"
                    "runs = 4\n");
  EXPECT_EQ(opts.min_dominant, 120);
  EXPECT_EQ(opts.dominance_margin, 40);
  EXPECT_EQ(opts.black_max, 50);
  EXPECT_EQ(opts.white_min, 200);
  EXPECT_EQ(opts.gap_px, 8);
  EXPECT_EQ(opts.min_area_px, 500);
  EXPECT_DOUBLE_EQ(opts.mm_per_px, 2.0);
  EXPECT_TRUE(opts.equalize);
  EXPECT_TRUE(opts.all_pairs);
  EXPECT_EQ(opts.threads, 3);
  EXPECT_EQ(opts.seed, 900u);
  EXPECT_EQ(opts.width, 800);
  EXPECT_EQ(opts.height, 600);
  EXPECT_EQ(opts.stages, "baseline,full");
  EXPECT_EQ(opts.frames, 30);
  EXPECT_EQ(opts.runs, 4);
}

TEST(ConfigFile, RejectsUnknownKeysAndBadValues) {
  Options opts;
  EXPECT_THROW(apply_config_text(opts, "no_such_key = 1\n"), ConfigError);
  EXPECT_THROW(apply_config_text(opts, "gap_px = fast\n"), ConfigError);
  EXPECT_THROW(apply_config_text(opts, "equalize = maybe\n"), ConfigError);
  EXPECT_THROW(apply_config_text(opts, "justaword\n"), ConfigError);
  EXPECT_THROW(apply_config_text(opts, "= 5\n"), ConfigError);
}

TEST(ConfigFile, MissingFileIsAnError) {
  Options opts;
  EXPECT_THROW(apply_config_file(opts, "/nonexistent/chromaseg.conf"), ConfigError);
}

TEST(Options, DerivedConfigsValidate) {
  Options opts;
  EXPECT_NO_THROW(opts.classifier_config());
  EXPECT_NO_THROW(opts.segmentation_config());
  EXPECT_NO_THROW(opts.calibration());

  opts.black_max = 250;  // violates black_max < white_min
  EXPECT_THROW(opts.classifier_config(), std::invalid_argument);
  opts = Options{};
  opts.gap_px = 0;
  EXPECT_THROW(opts.segmentation_config(), std::invalid_argument);
  opts = Options{};
  opts.mm_per_px = -1.0;
  EXPECT_THROW(opts.calibration(), std::invalid_argument);
}

// flag > file > default, checked key by key.
TEST(Precedence, FlagBeatsFileBeatsDefault) {
  const std::string file_text =
      "min_dominant = 111\n"
      "dominance_margin = 41\n"
      "black_max = 51\n"
      "white_min = 201\n"
      "gap_px = 6\n"
      "min_area_px = 600\n"
      "mm_per_px = 2.5\n"
      "equalize = true\n"
      "all_pairs = true\n"
      "threads = 2\n"
      "seed = 77\n"
      "width = 777\n"
      "height = 555\n"
      "stages = classify\n"
      "frames = 11\n"
      "runs = 3\n";

  // File layer only.
  Options file_only;
  apply_config_text(file_only, file_text);
  const Options defaults;
  EXPECT_NE(file_only.min_dominant, defaults.min_dominant);
  EXPECT_EQ(file_only.min_dominant, 111);

  // Flag layer on top of the file layer, every key.
  OptionOverrides flags;
  flags.min_dominant = 112;
  flags.dominance_margin = 42;
  flags.black_max = 52;
  flags.white_min = 202;
  flags.gap_px = 7;
  flags.min_area_px = 700;
  flags.mm_per_px = 3.0;
  flags.equalize = false;
  flags.all_pairs = false;
  flags.threads = 5;
  flags.seed = 88;
  flags.width = 888;
  flags.height = 666;
  flags.stages = "full";
  flags.frames = 22;
  flags.runs = 9;

  Options merged;
  apply_config_text(merged, file_text);
  apply_overrides(merged, flags);
  EXPECT_EQ(merged.min_dominant, 112);
  EXPECT_EQ(merged.dominance_margin, 42);
  EXPECT_EQ(merged.black_max, 52);
  EXPECT_EQ(merged.white_min, 202);
  EXPECT_EQ(merged.gap_px, 7);
  EXPECT_EQ(merged.min_area_px, 700);
  EXPECT_DOUBLE_EQ(merged.mm_per_px, 3.0);
  EXPECT_FALSE(merged.equalize);
  EXPECT_FALSE(merged.all_pairs);
  EXPECT_EQ(merged.threads, 5);
  EXPECT_EQ(merged.seed, 88u);
  EXPECT_EQ(merged.width, 888);
  EXPECT_EQ(merged.height, 666);
  EXPECT_EQ(merged.stages, "full");
  EXPECT_EQ(merged.frames, 22);
  EXPECT_EQ(merged.runs, 9);

  // Untouched flags leave file values in place.
  Options partial;
  apply_config_text(partial, file_text);
  apply_overrides(partial, OptionOverrides{});
  EXPECT_EQ(partial.gap_px, 6);
  EXPECT_TRUE(partial.equalize);
}

}  // namespace
}  // namespace chromaseg
