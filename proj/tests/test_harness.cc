// tests/test_harness.cc

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

#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "augssl/harness.h"
#include "augssl/synth_corpus.h"
#include "test_util.h"

using namespace augssl;
namespace fs = std::filesystem;

TEST_CASE("crossover interpolates between bracketing points") {
  const CrossoverEstimate estimate = crossover_multiplier({{1.0, 2.0}, {3.0, 6.0}}, 4.0);
  CHECK(estimate.reachable);
  CHECK(!estimate.already_exceeded);
  CHECK(estimate.multiplier == 2.0);  // exact: midpoint of a straight line
  CHECK(estimate.max_delta == 6.0);
}

TEST_CASE("crossover reports an already-met target") {
  const CrossoverEstimate estimate = crossover_multiplier({{1.0, 5.0}, {3.0, 6.0}}, 4.0);
  CHECK(estimate.reachable);
  CHECK(estimate.already_exceeded);
  CHECK(estimate.multiplier == 1.0);
}

TEST_CASE("crossover reports an unreachable target") {
  const CrossoverEstimate estimate = crossover_multiplier({{1.0, 1.0}, {3.0, 2.0}}, 4.0);
  CHECK(!estimate.reachable);
  CHECK(estimate.max_delta == 2.0);
}

TEST_CASE("crossover handles negative series and bad input") {
  const CrossoverEstimate estimate = crossover_multiplier({{1.0, -3.0}, {3.0, -1.0}}, 4.0);
  CHECK(!estimate.reachable);
  CHECK(estimate.max_delta == -1.0);
  CHECK_THROWS(crossover_multiplier({{3.0, 1.0}, {1.0, 2.0}}, 4.0));
  CHECK(!crossover_multiplier({}, 4.0).reachable);
}

TEST_CASE("run ids and cell seeds are distinct per cell") {
  CHECK(run_id_for(GridStrategy::kBaseline, 0, 3) == "baseline_s3");
  CHECK(run_id_for(GridStrategy::kNoise, 2, 1) == "noise_r2_s1");
  CHECK(run_id_for(GridStrategy::kNoisePitchMix, 12, 7) == "noise_pitch_mix_r12_s7");

  std::set<uint64_t> seeds;
  for (GridStrategy strategy : {GridStrategy::kNoise, GridStrategy::kPitch,
                                GridStrategy::kCleanExtra, GridStrategy::kNoisePitchMix})
    for (int ratio : {1, 2, 3})
      for (uint64_t grid_seed : {1ull, 2ull})
        seeds.insert(cell_seed_for(grid_seed, strategy, ratio));
  CHECK(seeds.size() == 4 * 3 * 2);
  CHECK(cell_seed_for(1, GridStrategy::kNoise, 1) == cell_seed_for(1, GridStrategy::kNoise, 1));
}

TEST_CASE("strategy names round-trip and accept the short mix alias") {
  for (GridStrategy strategy :
       {GridStrategy::kBaseline, GridStrategy::kCleanExtra, GridStrategy::kCorpusMix,
        GridStrategy::kNoise, GridStrategy::kPitch, GridStrategy::kNoisePitchMix}) {
    CHECK(parse_grid_strategy(grid_strategy_name(strategy)) == strategy);
  }
  CHECK(parse_grid_strategy("mix") == GridStrategy::kNoisePitchMix);
  CHECK_THROWS(parse_grid_strategy("speed"));
}

TEST_CASE("experiment spec json round-trips") {
  ExperimentSpec spec;
  spec.base_manifest = "base.jsonl";
  spec.finetune_manifest = "ft.jsonl";
  spec.test_manifest = "test.jsonl";
  spec.noise_manifest = "noise.jsonl";
  spec.strategies = {GridStrategy::kNoise, GridStrategy::kPitch};
  spec.default_ratios = {1, 2};
  spec.ratios_per_strategy["pitch"] = {1};
  spec.seeds = {4, 5};
  spec.pretrain.epochs = 2;
  spec.pretrain.model.hidden_dim = 8;
  spec.finetune.epochs = 3;
  spec.features.standardize = true;

  const ExperimentSpec back = ExperimentSpec::from_json(spec.to_json());
  CHECK(back.base_manifest == "base.jsonl");
  CHECK(back.strategies == spec.strategies);
  CHECK(back.default_ratios == spec.default_ratios);
  CHECK(back.seeds == spec.seeds);
  CHECK(back.pretrain.epochs == 2);
  CHECK(back.pretrain.model.hidden_dim == 8);
  CHECK(back.finetune.epochs == 3);
  CHECK(back.features.standardize);
  CHECK(back.ratios_for(GridStrategy::kPitch) == std::vector<int>{1});
  CHECK(back.ratios_for(GridStrategy::kNoise) == std::vector<int>{1, 2});
}

TEST_CASE("experiment spec validation rejects bad shapes") {
  ExperimentSpec spec;
  spec.base_manifest = "base.jsonl";
  spec.finetune_manifest = "ft.jsonl";
  spec.test_manifest = "test.jsonl";
  spec.strategies = {GridStrategy::kPitch};
  CHECK_NOTHROW(spec.validate());

  ExperimentSpec bad = spec;
  bad.strategies = {GridStrategy::kBaseline};  // implicit, not listable
  CHECK_THROWS(bad.validate());

  bad = spec;
  bad.default_ratios = {4};  // not an allowed ratio
  CHECK_THROWS(bad.validate());

  bad = spec;
  bad.strategies = {GridStrategy::kNoise};  // no noise manifest configured
  CHECK_THROWS(bad.validate());

  bad = spec;
  bad.strategies = {GridStrategy::kCorpusMix};  // no other manifest
  CHECK_THROWS(bad.validate());

  bad = spec;
  bad.strategies = {GridStrategy::kCleanExtra};  // no extra clean manifest
  CHECK_THROWS(bad.validate());

  bad = spec;
  bad.seeds = {};
  CHECK_THROWS(bad.validate());

  CHECK_THROWS(ExperimentSpec::from_json("{\"base_manifest\": \"b\", \"oops\": 1}"));
}

TEST_CASE("checked-in example specs parse and validate") {
  const ExperimentSpec full = ExperimentSpec::load(std::string(AUGSSL_CONFIG_DIR) + "/full_grid.json");
  CHECK(full.strategies.size() == 5);
  CHECK(full.seeds == std::vector<uint64_t>{1, 2, 3});
  CHECK(full.ratios_for(GridStrategy::kCorpusMix) == std::vector<int>{1, 2, 3, 6, 12, 16, 20});
  CHECK(full.ratios_for(GridStrategy::kNoise) == std::vector<int>{1, 2, 3});
  CHECK(full.pretrain.model.hidden_dim == 512);

  const ExperimentSpec desk = ExperimentSpec::load(std::string(AUGSSL_CONFIG_DIR) + "/desk_grid.json");
  CHECK(desk.strategies.size() == 5);
  CHECK(desk.pretrain.model.hidden_dim == 64);
  CHECK(desk.features.standardize);
}

TEST_CASE("delta rows average the stored per-seed deltas") {
  // Cells store delta against the same-seed baseline; rows average those.
  std::vector<RunReport> reports;
  std::map<uint64_t, double> baseline_acc;
  auto add = [&](GridStrategy strategy, int ratio, uint64_t seed, double acc) {
    RunReport report;
    report.strategy = strategy;
    report.ratio = ratio;
    report.seed = seed;
    report.run_id = run_id_for(strategy, ratio, seed);
    report.frame_accuracy_percent = acc;
    report.status = "ok";
    if (strategy == GridStrategy::kBaseline) baseline_acc[seed] = acc;
    else report.delta_vs_baseline = acc - baseline_acc.at(seed);
    reports.push_back(report);
  };
  add(GridStrategy::kBaseline, 0, 1, 50.0);
  add(GridStrategy::kBaseline, 0, 2, 52.0);
  add(GridStrategy::kNoise, 1, 1, 53.0);
  add(GridStrategy::kNoise, 1, 2, 54.0);
  add(GridStrategy::kNoise, 2, 1, 55.0);
  add(GridStrategy::kNoise, 2, 2, 58.0);

  const std::vector<DeltaRow> rows = report_deltas(reports);
  REQUIRE(rows.size() == 3);  // baseline, noise r1, noise r2
  CHECK(rows[0].strategy == GridStrategy::kBaseline);
  CHECK(rows[0].mean_accuracy_percent == doctest::Approx(51.0));
  CHECK(rows[0].mean_delta_percent == doctest::Approx(0.0));
  CHECK(rows[1].ratio == 1);
  CHECK(rows[1].num_seeds == 2);
  CHECK(rows[1].mean_accuracy_percent == doctest::Approx(53.5));
  // Mean of per-seed deltas: (53-50 + 54-52) / 2.
  CHECK(rows[1].mean_delta_percent == doctest::Approx(2.5));
  CHECK(rows[2].mean_delta_percent == doctest::Approx(5.5));

  const std::string table = format_delta_table(rows);
  CHECK(table.find("baseline") != std::string::npos);
  CHECK(table.find("noise") != std::string::npos);
}

TEST_CASE("scaling series cover hours and multipliers") {
  std::vector<RunReport> reports;
  auto add = [&](GridStrategy strategy, int ratio, double hours, double acc) {
    RunReport report;
    report.strategy = strategy;
    report.ratio = ratio;
    report.seed = 1;
    report.run_id = run_id_for(strategy, ratio, 1);
    report.pretrain_hours = hours;
    report.frame_accuracy_percent = acc;
    report.status = "ok";
    if (strategy != GridStrategy::kBaseline) report.delta_vs_baseline = acc - 50.0;
    reports.push_back(report);
  };
  add(GridStrategy::kBaseline, 0, 1.0, 50.0);
  add(GridStrategy::kPitch, 1, 2.0, 52.0);
  add(GridStrategy::kPitch, 3, 4.0, 55.0);

  const std::vector<ScalingPoint> points = report_scaling(reports);
  int hours_points = 0, multiplier_points = 0;
  for (const ScalingPoint &point : points) {
    if (point.kind == "hours") ++hours_points;
    if (point.kind == "multiplier") ++multiplier_points;
  }
  // Hours: baseline + the two pitch cells (baseline prepended to the series).
  CHECK(hours_points == 3);
  // Multiplier: one delta point per pitch ratio.
  CHECK(multiplier_points == 2);
  for (const ScalingPoint &point : points)
    if (point.kind == "multiplier" && point.x == 3.0)
      CHECK(point.y == doctest::Approx(5.0));
}

TEST_CASE("run report json round-trips including failure state") {
  RunReport report;
  report.run_id = "noise_r2_s1";
  report.strategy = GridStrategy::kNoise;
  report.ratio = 2;
  report.seed = 1;
  report.cell_seed = 12345;
  report.pretrain_hours = 0.05;
  report.final_pretrain_loss = 1.25;
  report.frame_accuracy_percent = 61.5;
  report.total_frames = 900;
  report.delta_vs_baseline = 2.5;
  report.wall_clock_s = 3.5;

  const RunReport back = RunReport::from_json(report.to_json());
  CHECK(back.run_id == report.run_id);
  CHECK(back.strategy == GridStrategy::kNoise);
  CHECK(back.cell_seed == 12345);
  CHECK(back.delta_vs_baseline.has_value());
  CHECK(*back.delta_vs_baseline == doctest::Approx(2.5));
  CHECK(back.status == "ok");

  RunReport failed;
  failed.run_id = "pitch_r1_s1";
  failed.strategy = GridStrategy::kPitch;
  failed.ratio = 1;
  failed.seed = 1;
  failed.status = "failed";
  failed.error = "disk full";
  const RunReport failed_back = RunReport::from_json(failed.to_json());
  CHECK(failed_back.status == "failed");
  CHECK(failed_back.error == "disk full");
  CHECK(!failed_back.delta_vs_baseline.has_value());
}

TEST_CASE("grid aborts when pre-training data leaks into evaluation") {
  const std::string dir = testutil::fresh_dir("grid_disjoint");
  SynthCorpusSpec spec;
  spec.num_utterances = 4;
  spec.utterance_duration_s = 0.5;
  spec.seed = 61;
  generate_synth_corpus(spec, StftConfig{}, dir + "/corpus");

  ExperimentSpec grid;
  grid.base_manifest = dir + "/corpus/manifest.jsonl";
  grid.finetune_manifest = dir + "/corpus/manifest.jsonl";  // same ids: leak
  grid.test_manifest = dir + "/corpus/manifest.jsonl";
  grid.strategies = {GridStrategy::kPitch};
  grid.default_ratios = {1};
  grid.pretrain.epochs = 1;
  grid.pretrain.model.hidden_dim = 8;

  CHECK_THROWS_WITH_AS(run_grid(grid, dir + "/out", 1),
                       doctest::Contains("disjointness"), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("a one-cell grid runs end to end") {
  const std::string dir = testutil::fresh_dir("grid_micro");
  SynthCorpusSpec base_spec;
  base_spec.num_utterances = 4;
  base_spec.utterance_duration_s = 0.5;
  base_spec.num_phoneme_classes = 3;
  base_spec.seed = 62;
  generate_synth_corpus(base_spec, StftConfig{}, dir + "/base");
  SynthCorpusSpec eval_spec = base_spec;
  eval_spec.num_utterances = 3;
  eval_spec.seed = 63;
  generate_synth_corpus(eval_spec, StftConfig{}, dir + "/eval");

  ExperimentSpec grid;
  grid.base_manifest = dir + "/base/manifest.jsonl";
  grid.finetune_manifest = dir + "/eval/manifest.jsonl";
  grid.test_manifest = dir + "/eval/manifest.jsonl";
  grid.strategies = {GridStrategy::kPitch};
  grid.default_ratios = {1};
  grid.seeds = {1};
  grid.pretrain.model.input_dim = 80;
  grid.pretrain.model.hidden_dim = 8;
  grid.pretrain.model.num_layers = 3;
  grid.pretrain.epochs = 1;
  grid.pretrain.batch_size = 2;
  grid.pretrain.seed = 1;
  grid.finetune.epochs = 1;
  grid.finetune.batch_size = 2;
  grid.finetune.seed = 1;
  grid.features.standardize = true;

  const std::vector<RunReport> reports = run_grid(grid, dir + "/out", 2);
  REQUIRE(reports.size() == 2);  // baseline + pitch r1
  CHECK(reports[0].strategy == GridStrategy::kBaseline);
  CHECK(reports[0].status == "ok");
  CHECK(reports[1].strategy == GridStrategy::kPitch);
  CHECK(reports[1].status == "ok");
  REQUIRE(reports[1].delta_vs_baseline.has_value());
  CHECK(*reports[1].delta_vs_baseline ==
        doctest::Approx(reports[1].frame_accuracy_percent -
                        reports[0].frame_accuracy_percent)
            .epsilon(1e-9));
  // Doubled pre-training data for ratio 1.
  CHECK(reports[1].pretrain_hours ==
        doctest::Approx(2.0 * reports[0].pretrain_hours).epsilon(0.01));

  CHECK(fs::exists(dir + "/out/results.csv"));
  CHECK(fs::exists(dir + "/out/cells/baseline_s1.json"));
  CHECK(fs::exists(dir + "/out/cells/pitch_r1_s1.json"));

  const std::vector<RunReport> loaded = load_cell_reports(dir + "/out");
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].run_id == reports[0].run_id);
  CHECK(loaded[1].frame_accuracy_percent ==
        doctest::Approx(reports[1].frame_accuracy_percent).epsilon(1e-12));
  fs::remove_all(dir);
}
