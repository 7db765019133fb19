// include/augssl/harness.h

// Copyright 2026  augssl contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AUGSSL_HARNESS_H_
#define AUGSSL_HARNESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "augssl/apc.h"
#include "augssl/probe.h"

namespace augssl {

// Full-scale reference results, quoted for context in reports. They come
// from hundreds of hours of real speech and are not reproducible by the
// desk-scale synthetic grids this toolkit runs; they are documentation
// constants, not test targets.
//
// Frame accuracy of the 25-hour clean baseline.
constexpr double kReferenceBaselineAccuracyPercent = 51.5;
// Accuracy gain from adding 75 hours of genuine clean speech (4x data).
constexpr double kReferenceCleanDataDeltaPercent = 5.6;
// Augmentation multiplier at which mixed augmentation matches that gain.
constexpr double kReferenceCrossoverMultiplier = 17.0;
// Gain of mixed augmentation at ratio 3 over the clean baseline.
constexpr double kReferenceMixDeltaAtRatio3Percent = 3.3;

// Grid strategies. kBaseline is implicit: it always runs first for every
// seed. kCleanExtra adds genuine extra clean data (the paper-style upper
// reference); the rest expand the base corpus via the augment module.
enum class GridStrategy { kBaseline, kCleanExtra, kCorpusMix, kNoise, kPitch, kNoisePitchMix };

std::string grid_strategy_name(GridStrategy strategy);
GridStrategy parse_grid_strategy(const std::string &name);  // throws on unknown name

struct ExperimentSpec {
  std::string base_manifest;
  std::string finetune_manifest;
  std::string test_manifest;
  std::string noise_manifest;        // required by noise / noise_pitch_mix
  std::string other_manifest;        // required by corpus_mix
  std::string extra_clean_manifest;  // required by clean_extra

  std::vector<GridStrategy> strategies;
  std::vector<int> default_ratios = {1, 2, 3};
  std::map<std::string, std::vector<int>> ratios_per_strategy;  // keyed by strategy name
  std::vector<uint64_t> seeds = {1};
  bool stack_effects = false;

  PretrainConfig pretrain;
  FinetuneConfig finetune;
  FeatureConfig features;

  void validate() const;
  std::vector<int> ratios_for(GridStrategy strategy) const;
  std::string to_json() const;
  static ExperimentSpec from_json(const std::string &json_text);
  static ExperimentSpec load(const std::string &path);
};

// One grid cell's persisted outcome. Everything except wall_clock_s is a
// pure function of the spec.
struct RunReport {
  std::string run_id;
  GridStrategy strategy = GridStrategy::kBaseline;
  int ratio = 0;  // 0 for baseline
  uint64_t seed = 0;
  uint64_t cell_seed = 0;
  double pretrain_hours = 0.0;
  double final_pretrain_loss = 0.0;
  double frame_accuracy_percent = 0.0;
  long long total_frames = 0;
  std::optional<double> delta_vs_baseline;
  double wall_clock_s = 0.0;
  std::string status = "ok";  // "ok" or "failed"
  std::string error;

  std::string to_json() const;
  static RunReport from_json(const std::string &json_text);
};

std::string run_id_for(GridStrategy strategy, int ratio, uint64_t seed);
uint64_t cell_seed_for(uint64_t grid_seed, GridStrategy strategy, int ratio);

// Runs baseline-first, then every (strategy, ratio, seed) cell, persisting
// one JSON per cell under <out_dir>/cells plus <out_dir>/results.csv.
// Completed cells are skipped on resume; failed cells are recorded and the
// grid continues. Aborts before any training if a pre-training-side
// manifest shares an id with the fine-tune or test manifest.
std::vector<RunReport> run_grid(const ExperimentSpec &spec, const std::string &out_dir,
                                int jobs = 1);

// Reports loaded back from <out_dir>/cells in deterministic order.
std::vector<RunReport> load_cell_reports(const std::string &out_dir);

// Seed-averaged accuracy delta over the baseline for each (strategy, ratio).
struct DeltaRow {
  GridStrategy strategy;
  int ratio = 0;
  int num_seeds = 0;
  double mean_accuracy_percent = 0.0;
  double mean_baseline_percent = 0.0;
  double mean_delta_percent = 0.0;
};
std::vector<DeltaRow> report_deltas(const std::vector<RunReport> &reports);
void write_delta_csv(const std::string &path, const std::vector<DeltaRow> &rows);
std::string format_delta_table(const std::vector<DeltaRow> &rows);

// Plot-ready series: accuracy vs total pre-training hours per strategy
// (baseline included as the first point), and delta vs augmentation
// multiplier for strategies with at least one ratio.
struct ScalingPoint {
  std::string kind;  // "hours" or "multiplier"
  GridStrategy strategy;
  double x = 0.0;
  double y = 0.0;
};
std::vector<ScalingPoint> report_scaling(const std::vector<RunReport> &reports);
void write_scaling_csv(const std::string &path, const std::vector<ScalingPoint> &points);

// Where a delta-vs-multiplier series first reaches target_delta, by linear
// interpolation between the bracketing points.
struct CrossoverEstimate {
  bool reachable = false;
  bool already_exceeded = false;  // first point is at or above the target
  double multiplier = 0.0;
  double max_delta = 0.0;  // highest delta seen in the series
};
CrossoverEstimate crossover_multiplier(const std::vector<std::pair<double, double>> &series,
                                       double target_delta);

}  // namespace augssl

#endif  // AUGSSL_HARNESS_H_
