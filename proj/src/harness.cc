// src/harness.cc

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

#include "augssl/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "augssl/apc_features.h"
#include "augssl/augment.h"
#include "augssl/checkpoint.h"
#include "augssl/log.h"
#include "augssl/rng.h"
#include "augssl/thread_pool.h"

namespace fs = std::filesystem;

namespace augssl {

std::string grid_strategy_name(GridStrategy strategy) {
  switch (strategy) {
    case GridStrategy::kBaseline: return "baseline";
    case GridStrategy::kCleanExtra: return "clean_extra";
    case GridStrategy::kCorpusMix: return "corpus_mix";
    case GridStrategy::kNoise: return "noise";
    case GridStrategy::kPitch: return "pitch";
    case GridStrategy::kNoisePitchMix: return "noise_pitch_mix";
  }
  throw std::runtime_error("grid_strategy_name: bad enum value");
}

GridStrategy parse_grid_strategy(const std::string &name) {
  if (name == "baseline") return GridStrategy::kBaseline;
  if (name == "clean_extra") return GridStrategy::kCleanExtra;
  if (name == "corpus_mix") return GridStrategy::kCorpusMix;
  if (name == "noise") return GridStrategy::kNoise;
  if (name == "pitch") return GridStrategy::kPitch;
  if (name == "noise_pitch_mix" || name == "mix") return GridStrategy::kNoisePitchMix;
  throw std::runtime_error("unknown grid strategy: " + name);
}

void ExperimentSpec::validate() const {
  if (base_manifest.empty()) throw std::runtime_error("experiment spec: base_manifest is required");
  if (finetune_manifest.empty())
    throw std::runtime_error("experiment spec: finetune_manifest is required");
  if (test_manifest.empty()) throw std::runtime_error("experiment spec: test_manifest is required");
  if (strategies.empty()) throw std::runtime_error("experiment spec: strategies must be non-empty");
  if (seeds.empty()) throw std::runtime_error("experiment spec: seeds must be non-empty");
  std::set<GridStrategy> strat_set(strategies.begin(), strategies.end());
  if (strat_set.size() != strategies.size())
    throw std::runtime_error("experiment spec: duplicate strategy");
  if (strat_set.count(GridStrategy::kBaseline))
    throw std::runtime_error("experiment spec: baseline is implicit, do not list it");
  std::set<uint64_t> seed_set(seeds.begin(), seeds.end());
  if (seed_set.size() != seeds.size()) throw std::runtime_error("experiment spec: duplicate seed");
  for (const auto &[name, ratios] : ratios_per_strategy) {
    parse_grid_strategy(name);
    if (ratios.empty())
      throw std::runtime_error("experiment spec: empty ratio list for strategy " + name);
  }
  for (GridStrategy strategy : strategies) {
    for (int ratio : ratios_for(strategy)) {
      if (std::find(kAllowedAugRatios.begin(), kAllowedAugRatios.end(), ratio) ==
          kAllowedAugRatios.end())
        throw std::runtime_error("experiment spec: ratio " + std::to_string(ratio) +
                                 " is not in the supported set");
    }
    if ((strategy == GridStrategy::kNoise || strategy == GridStrategy::kNoisePitchMix) &&
        noise_manifest.empty())
      throw std::runtime_error("experiment spec: noise_manifest is required for strategy " +
                               grid_strategy_name(strategy));
    if (strategy == GridStrategy::kCorpusMix && other_manifest.empty())
      throw std::runtime_error("experiment spec: other_manifest is required for corpus_mix");
    if (strategy == GridStrategy::kCleanExtra && extra_clean_manifest.empty())
      throw std::runtime_error("experiment spec: extra_clean_manifest is required for clean_extra");
  }
  pretrain.validate();
  finetune.validate();
  features.stft.validate();
  features.mel.validate(kCanonicalSampleRate);
}

std::vector<int> ExperimentSpec::ratios_for(GridStrategy strategy) const {
  auto it = ratios_per_strategy.find(grid_strategy_name(strategy));
  std::vector<int> ratios = it != ratios_per_strategy.end() ? it->second : default_ratios;
  std::sort(ratios.begin(), ratios.end());
  ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());
  return ratios;
}

std::string ExperimentSpec::to_json() const {
  nlohmann::ordered_json j;
  j["base_manifest"] = base_manifest;
  j["finetune_manifest"] = finetune_manifest;
  j["test_manifest"] = test_manifest;
  if (!noise_manifest.empty()) j["noise_manifest"] = noise_manifest;
  if (!other_manifest.empty()) j["other_manifest"] = other_manifest;
  if (!extra_clean_manifest.empty()) j["extra_clean_manifest"] = extra_clean_manifest;
  j["strategies"] = nlohmann::ordered_json::array();
  for (GridStrategy s : strategies) j["strategies"].push_back(grid_strategy_name(s));
  j["default_ratios"] = default_ratios;
  if (!ratios_per_strategy.empty()) j["ratios_per_strategy"] = ratios_per_strategy;
  j["seeds"] = seeds;
  if (stack_effects) j["stack_effects"] = true;
  j["pretrain"] = nlohmann::ordered_json::parse(pretrain.to_json());
  j["finetune"] = nlohmann::ordered_json::parse(finetune.to_json());
  j["features"] = nlohmann::ordered_json::parse(feature_config_to_json(features));
  return j.dump(2);
}

ExperimentSpec ExperimentSpec::from_json(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("experiment spec: ") + e.what());
  }
  ExperimentSpec spec;
  for (const auto &[key, value] : j.items()) {
    if (key == "base_manifest") spec.base_manifest = value.get<std::string>();
    else if (key == "finetune_manifest") spec.finetune_manifest = value.get<std::string>();
    else if (key == "test_manifest") spec.test_manifest = value.get<std::string>();
    else if (key == "noise_manifest") spec.noise_manifest = value.get<std::string>();
    else if (key == "other_manifest") spec.other_manifest = value.get<std::string>();
    else if (key == "extra_clean_manifest") spec.extra_clean_manifest = value.get<std::string>();
    else if (key == "strategies") {
      spec.strategies.clear();
      for (const auto &name : value) spec.strategies.push_back(parse_grid_strategy(name.get<std::string>()));
    } else if (key == "default_ratios") {
      spec.default_ratios = value.get<std::vector<int>>();
    } else if (key == "ratios_per_strategy") {
      spec.ratios_per_strategy = value.get<std::map<std::string, std::vector<int>>>();
    } else if (key == "seeds") {
      spec.seeds = value.get<std::vector<uint64_t>>();
    } else if (key == "stack_effects") {
      spec.stack_effects = value.get<bool>();
    } else if (key == "pretrain") {
      spec.pretrain = PretrainConfig::from_json(value.dump());
    } else if (key == "finetune") {
      spec.finetune = FinetuneConfig::from_json(value.dump());
    } else if (key == "features") {
      spec.features = feature_config_from_json(value.dump());
    } else {
      throw std::runtime_error("experiment spec: unknown key: " + key);
    }
  }
  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open experiment spec: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return from_json(buf.str());
  } catch (const std::exception &e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string run_id_for(GridStrategy strategy, int ratio, uint64_t seed) {
  if (strategy == GridStrategy::kBaseline) return "baseline_s" + std::to_string(seed);
  return grid_strategy_name(strategy) + "_r" + std::to_string(ratio) + "_s" +
         std::to_string(seed);
}

uint64_t cell_seed_for(uint64_t grid_seed, GridStrategy strategy, int ratio) {
  return seed_combine(
      seed_combine(seed_combine(grid_seed, "grid-cell"), grid_strategy_name(strategy)),
      static_cast<uint64_t>(ratio));
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["run_id"] = run_id;
  j["strategy"] = grid_strategy_name(strategy);
  j["ratio"] = ratio;
  j["seed"] = seed;
  j["cell_seed"] = cell_seed;
  j["pretrain_hours"] = pretrain_hours;
  j["final_pretrain_loss"] = final_pretrain_loss;
  j["frame_accuracy_percent"] = frame_accuracy_percent;
  j["total_frames"] = total_frames;
  if (delta_vs_baseline) j["delta_vs_baseline"] = *delta_vs_baseline;
  else j["delta_vs_baseline"] = nullptr;
  j["wall_clock_s"] = wall_clock_s;
  j["status"] = status;
  j["error"] = error;
  return j.dump(2);
}

RunReport RunReport::from_json(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("run report: ") + e.what());
  }
  RunReport report;
  for (const auto &[key, value] : j.items()) {
    if (key == "run_id") report.run_id = value.get<std::string>();
    else if (key == "strategy") report.strategy = parse_grid_strategy(value.get<std::string>());
    else if (key == "ratio") report.ratio = value.get<int>();
    else if (key == "seed") report.seed = value.get<uint64_t>();
    else if (key == "cell_seed") report.cell_seed = value.get<uint64_t>();
    else if (key == "pretrain_hours") report.pretrain_hours = value.get<double>();
    else if (key == "final_pretrain_loss") report.final_pretrain_loss = value.get<double>();
    else if (key == "frame_accuracy_percent") report.frame_accuracy_percent = value.get<double>();
    else if (key == "total_frames") report.total_frames = value.get<long long>();
    else if (key == "delta_vs_baseline") {
      if (!value.is_null()) report.delta_vs_baseline = value.get<double>();
    } else if (key == "wall_clock_s") report.wall_clock_s = value.get<double>();
    else if (key == "status") report.status = value.get<std::string>();
    else if (key == "error") report.error = value.get<std::string>();
    else throw std::runtime_error("run report: unknown key: " + key);
  }
  if (report.run_id.empty()) throw std::runtime_error("run report: missing run_id");
  return report;
}

namespace {

struct GridData {
  Manifest base;
  Manifest finetune_set;
  Manifest test_set;
  std::optional<Manifest> noise_pool;
  std::optional<Manifest> other_pool;
  std::optional<Manifest> extra_pool;
};

bool needs_noise(const ExperimentSpec &spec) {
  for (GridStrategy s : spec.strategies)
    if (s == GridStrategy::kNoise || s == GridStrategy::kNoisePitchMix) return true;
  return false;
}

bool has_strategy(const ExperimentSpec &spec, GridStrategy strategy) {
  return std::find(spec.strategies.begin(), spec.strategies.end(), strategy) !=
         spec.strategies.end();
}

GridData load_grid_data(const ExperimentSpec &spec) {
  GridData data;
  data.base = load_manifest(spec.base_manifest);
  data.finetune_set = load_manifest(spec.finetune_manifest);
  data.test_set = load_manifest(spec.test_manifest);
  if (needs_noise(spec)) data.noise_pool = load_manifest(spec.noise_manifest);
  if (has_strategy(spec, GridStrategy::kCorpusMix))
    data.other_pool = load_manifest(spec.other_manifest);
  if (has_strategy(spec, GridStrategy::kCleanExtra))
    data.extra_pool = load_manifest(spec.extra_clean_manifest);
  if (data.base.empty()) throw std::runtime_error("experiment spec: base manifest is empty");
  if (data.finetune_set.empty())
    throw std::runtime_error("experiment spec: finetune manifest is empty");
  if (data.test_set.empty()) throw std::runtime_error("experiment spec: test manifest is empty");
  return data;
}

// Pre-training audio leaking into the probe's train or test set would make
// every accuracy number meaningless, so the whole grid refuses to start.
void check_disjoint(const GridData &data) {
  std::set<std::string> eval_ids;
  for (const auto &e : data.finetune_set.entries) eval_ids.insert(e.id);
  for (const auto &e : data.test_set.entries) eval_ids.insert(e.id);
  auto check = [&](const Manifest &m, const std::string &what) {
    for (const auto &e : m.entries) {
      if (eval_ids.count(e.id))
        throw std::runtime_error("disjointness violation: id '" + e.id + "' from the " + what +
                                 " manifest also appears in the fine-tune or test manifest");
    }
  };
  check(data.base, "base");
  if (data.other_pool) check(*data.other_pool, "other");
  if (data.extra_pool) check(*data.extra_pool, "extra clean");
}

Manifest absolutize(const Manifest &manifest) {
  Manifest out;
  for (const auto &entry : manifest.entries) {
    ManifestEntry copy = entry;
    copy.audio_path =
        fs::absolute(manifest.resolve_audio_path(entry)).lexically_normal().string();
    if (auto labels = manifest.resolve_labels_path(entry))
      copy.labels_path = fs::absolute(*labels).lexically_normal().string();
    out.entries.push_back(std::move(copy));
  }
  return out;
}

AugStrategy to_aug_strategy(GridStrategy strategy) {
  switch (strategy) {
    case GridStrategy::kCorpusMix: return AugStrategy::kCorpusMix;
    case GridStrategy::kNoise: return AugStrategy::kNoise;
    case GridStrategy::kPitch: return AugStrategy::kPitch;
    case GridStrategy::kNoisePitchMix: return AugStrategy::kNoisePitchMix;
    default: throw std::runtime_error("strategy has no augmentation plan");
  }
}

Manifest build_pretrain_manifest(const ExperimentSpec &spec, const GridData &data,
                                 GridStrategy strategy, int ratio, uint64_t cell_seed,
                                 const std::string &work_dir) {
  if (strategy == GridStrategy::kBaseline) {
    Manifest out = absolutize(data.base);
    save_manifest(out, work_dir + "/pretrain_manifest.jsonl");
    return out;
  }
  if (strategy == GridStrategy::kCleanExtra) {
    Manifest out = absolutize(data.base);
    const double target_s = static_cast<double>(ratio) * data.base.total_duration_s();
    const std::vector<size_t> picked = select_prefix_by_duration(*data.extra_pool, target_s);
    const Manifest extra_abs = absolutize(*data.extra_pool);
    for (size_t i : picked) out.entries.push_back(extra_abs.entries[i]);
    save_manifest(out, work_dir + "/pretrain_manifest.jsonl");
    return out;
  }
  AugmentationPlan plan;
  plan.base = data.base;
  plan.strategy = to_aug_strategy(strategy);
  plan.ratio = ratio;
  plan.seed = cell_seed;
  plan.stack_effects = spec.stack_effects;
  if (strategy == GridStrategy::kNoise || strategy == GridStrategy::kNoisePitchMix) {
    NoiseAugSpec noise;
    noise.noise_manifest = *data.noise_pool;
    plan.noise = noise;
  }
  if (strategy == GridStrategy::kPitch || strategy == GridStrategy::kNoisePitchMix)
    plan.pitch = PitchAugSpec{};
  if (strategy == GridStrategy::kCorpusMix) plan.other = *data.other_pool;
  return expand_plan(plan, work_dir + "/aug", 1);
}

// Strategies that synthesize new audio get a cell-local feature cache:
// their utterance ids repeat across cells while the waveforms differ.
bool writes_new_audio(GridStrategy strategy) {
  return strategy == GridStrategy::kNoise || strategy == GridStrategy::kPitch ||
         strategy == GridStrategy::kNoisePitchMix;
}

void write_text_atomic(const std::string &path, const std::string &text) {
  const size_t tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  const std::string tmp = path + ".tmp." + std::to_string(tid);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  fs::rename(tmp, path);
}

std::string cell_path(const std::string &out_dir, const std::string &run_id) {
  return out_dir + "/cells/" + run_id + ".json";
}

RunReport run_cell(const ExperimentSpec &spec, const GridData &data, GridStrategy strategy,
                   int ratio, uint64_t seed, const std::string &out_dir,
                   std::optional<double> baseline_accuracy) {
  RunReport report;
  report.run_id = run_id_for(strategy, ratio, seed);
  report.strategy = strategy;
  report.ratio = ratio;
  report.seed = seed;
  report.cell_seed = cell_seed_for(seed, strategy, ratio);
  const auto start = std::chrono::steady_clock::now();
  try {
    log_info("cell " + report.run_id + ": starting");
    const std::string work_dir = out_dir + "/work/" + report.run_id;
    fs::create_directories(work_dir);

    const Manifest pretrain_set =
        build_pretrain_manifest(spec, data, strategy, ratio, report.cell_seed, work_dir);
    {
      std::set<std::string> eval_ids;
      for (const auto &e : data.finetune_set.entries) eval_ids.insert(e.id);
      for (const auto &e : data.test_set.entries) eval_ids.insert(e.id);
      for (const auto &e : pretrain_set.entries)
        if (eval_ids.count(e.id))
          throw std::runtime_error("disjointness violation: expanded id '" + e.id +
                                   "' appears in the fine-tune or test manifest");
    }
    report.pretrain_hours = pretrain_set.total_duration_hours();

    FeatureConfig pretrain_features = spec.features;
    pretrain_features.cache_dir =
        writes_new_audio(strategy) ? work_dir + "/features" : out_dir + "/feature_cache";
    fs::create_directories(pretrain_features.cache_dir);

    PretrainConfig pretrain_config = spec.pretrain;
    pretrain_config.seed = report.cell_seed;
    const PretrainResult pretrained = pretrain(pretrain_config, pretrain_set, pretrain_features);
    report.final_pretrain_loss =
        pretrained.epoch_losses.empty() ? 0.0 : pretrained.epoch_losses.back();
    write_loss_curve(work_dir + "/pretrain_loss.csv", pretrained.epoch_losses);
    {
      ApcModel model_copy = pretrained.model;
      nlohmann::ordered_json echo;
      echo["pretrain"] = nlohmann::ordered_json::parse(pretrain_config.to_json());
      echo["features"] = nlohmann::ordered_json::parse(feature_config_to_json(spec.features));
      save_checkpoint(work_dir + "/apc.ackp", apc_param_registry(model_copy), echo.dump());
    }

    FeatureConfig eval_features = spec.features;
    eval_features.cache_dir = out_dir + "/feature_cache";
    fs::create_directories(eval_features.cache_dir);
    // The probe seed is shared by every cell of a grid seed so that cells
    // differ only in their pre-training data.
    FinetuneConfig finetune_config = spec.finetune;
    finetune_config.seed = seed_combine(seed_combine(finetune_config.seed, seed), "finetune");
    const FinetuneResult tuned =
        finetune(pretrained.model, data.finetune_set, eval_features, finetune_config);
    const EvalReport eval = evaluate(tuned.probe, data.test_set, eval_features);
    report.frame_accuracy_percent = eval.frame_accuracy_percent;
    report.total_frames = eval.total_frames;
    if (strategy == GridStrategy::kBaseline) report.delta_vs_baseline = 0.0;
    else if (baseline_accuracy)
      report.delta_vs_baseline = eval.frame_accuracy_percent - *baseline_accuracy;
    write_eval_report_csv(work_dir + "/eval.csv", report.run_id, report.pretrain_hours,
                          grid_strategy_name(strategy), ratio, eval);
    report.status = "ok";
    std::ostringstream done;
    done << "cell " << report.run_id << ": accuracy "
         << std::setprecision(4) << eval.frame_accuracy_percent << "%";
    log_info(done.str());
  } catch (const std::exception &e) {
    report.status = "failed";
    report.error = e.what();
    log_error("cell " + report.run_id + ": " + e.what());
  }
  report.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_text_atomic(cell_path(out_dir, report.run_id), report.to_json());
  return report;
}

void write_results_csv(const std::string &path, const std::vector<RunReport> &reports) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "run_id,seed,strategy,ratio,pretrain_hours,final_pretrain_loss,"
         "frame_accuracy_percent,delta_vs_baseline,total_frames,status\n";
  for (const auto &r : reports) {
    out << r.run_id << ',' << r.seed << ',' << grid_strategy_name(r.strategy) << ',' << r.ratio
        << ',' << r.pretrain_hours << ',' << r.final_pretrain_loss << ','
        << r.frame_accuracy_percent << ',';
    if (r.delta_vs_baseline) out << *r.delta_vs_baseline;
    out << ',' << r.total_frames << ',' << r.status << '\n';
  }
  write_text_atomic(path, out.str());
}

}  // namespace

std::vector<RunReport> run_grid(const ExperimentSpec &spec, const std::string &out_dir,
                                int jobs) {
  spec.validate();
  if (jobs < 1) throw std::runtime_error("run_grid: jobs must be >= 1");
  const GridData data = load_grid_data(spec);
  check_disjoint(data);
  fs::create_directories(out_dir + "/cells");

  struct Cell {
    GridStrategy strategy;
    int ratio;
    uint64_t seed;
  };
  std::vector<Cell> baseline_cells;
  std::vector<Cell> aug_cells;
  for (uint64_t seed : spec.seeds) baseline_cells.push_back({GridStrategy::kBaseline, 0, seed});
  for (uint64_t seed : spec.seeds)
    for (GridStrategy strategy : spec.strategies)
      for (int ratio : spec.ratios_for(strategy)) aug_cells.push_back({strategy, ratio, seed});

  std::map<std::string, RunReport> done;
  std::mutex done_mutex;
  auto try_resume = [&](const Cell &cell) {
    const std::string run_id = run_id_for(cell.strategy, cell.ratio, cell.seed);
    const std::string path = cell_path(out_dir, run_id);
    if (!fs::exists(path)) return false;
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    RunReport report;
    try {
      report = RunReport::from_json(buf.str());
    } catch (const std::exception &e) {
      log_warn("cell " + run_id + ": unreadable report, re-running (" + std::string(e.what()) +
               ")");
      return false;
    }
    if (report.status != "ok") return false;
    log_info("cell " + run_id + ": already complete, skipping");
    done[run_id] = std::move(report);
    return true;
  };

  std::vector<Cell> pending;
  for (const Cell &cell : baseline_cells)
    if (!try_resume(cell)) pending.push_back(cell);
  parallel_for(pending.size(), jobs, [&](size_t i) {
    const Cell &cell = pending[i];
    RunReport report = run_cell(spec, data, cell.strategy, cell.ratio, cell.seed, out_dir,
                                std::nullopt);
    std::lock_guard<std::mutex> lock(done_mutex);
    done[report.run_id] = std::move(report);
  });

  std::map<uint64_t, std::optional<double>> baseline_accuracy;
  for (uint64_t seed : spec.seeds) {
    auto it = done.find(run_id_for(GridStrategy::kBaseline, 0, seed));
    if (it != done.end() && it->second.status == "ok")
      baseline_accuracy[seed] = it->second.frame_accuracy_percent;
    else
      baseline_accuracy[seed] = std::nullopt;
  }

  pending.clear();
  for (const Cell &cell : aug_cells)
    if (!try_resume(cell)) pending.push_back(cell);
  parallel_for(pending.size(), jobs, [&](size_t i) {
    const Cell &cell = pending[i];
    RunReport report = run_cell(spec, data, cell.strategy, cell.ratio, cell.seed, out_dir,
                                baseline_accuracy.at(cell.seed));
    std::lock_guard<std::mutex> lock(done_mutex);
    done[report.run_id] = std::move(report);
  });

  std::vector<RunReport> ordered;
  auto append = [&](const Cell &cell) {
    auto it = done.find(run_id_for(cell.strategy, cell.ratio, cell.seed));
    if (it != done.end()) ordered.push_back(it->second);
  };
  for (uint64_t seed : spec.seeds) {
    append({GridStrategy::kBaseline, 0, seed});
    for (GridStrategy strategy : spec.strategies)
      for (int ratio : spec.ratios_for(strategy)) append({strategy, ratio, seed});
  }

  // Resumed cells that ran before their baseline succeeded have no delta
  // yet; settle them now so interrupted and uninterrupted grids converge.
  for (RunReport &report : ordered) {
    if (report.strategy == GridStrategy::kBaseline || report.status != "ok") continue;
    const auto &base = baseline_accuracy.at(report.seed);
    if (!base) continue;
    const double delta = report.frame_accuracy_percent - *base;
    if (!report.delta_vs_baseline || *report.delta_vs_baseline != delta) {
      report.delta_vs_baseline = delta;
      write_text_atomic(cell_path(out_dir, report.run_id), report.to_json());
    }
  }

  write_results_csv(out_dir + "/results.csv", ordered);
  return ordered;
}

std::vector<RunReport> load_cell_reports(const std::string &out_dir) {
  const std::string cells_dir = out_dir + "/cells";
  if (!fs::is_directory(cells_dir))
    throw std::runtime_error("no cell reports under " + out_dir);
  std::vector<std::string> paths;
  for (const auto &entry : fs::directory_iterator(cells_dir))
    if (entry.path().extension() == ".json") paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<RunReport> reports;
  for (const std::string &path : paths) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      reports.push_back(RunReport::from_json(buf.str()));
    } catch (const std::exception &e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }
  return reports;
}

namespace {

struct GroupStats {
  int count = 0;
  double accuracy_sum = 0.0;
  double delta_sum = 0.0;
  int delta_count = 0;
  double hours_sum = 0.0;
};

// (strategy, ratio) -> stats over ok cells, plus deterministic group order.
std::map<std::pair<int, int>, GroupStats> group_reports(
    const std::vector<RunReport> &reports, std::vector<std::pair<int, int>> *order) {
  std::map<std::pair<int, int>, GroupStats> groups;
  for (const auto &report : reports) {
    if (report.status != "ok") continue;
    const std::pair<int, int> key(static_cast<int>(report.strategy), report.ratio);
    GroupStats &stats = groups[key];
    stats.count += 1;
    stats.accuracy_sum += report.frame_accuracy_percent;
    stats.hours_sum += report.pretrain_hours;
    if (report.delta_vs_baseline) {
      stats.delta_sum += *report.delta_vs_baseline;
      stats.delta_count += 1;
    }
  }
  if (order) {
    order->clear();
    for (const auto &[key, stats] : groups) order->push_back(key);
  }
  return groups;
}

}  // namespace

std::vector<DeltaRow> report_deltas(const std::vector<RunReport> &reports) {
  std::vector<std::pair<int, int>> order;
  const auto groups = group_reports(reports, &order);
  const auto base_it = groups.find({static_cast<int>(GridStrategy::kBaseline), 0});
  const bool have_baseline = base_it != groups.end() && base_it->second.count > 0;
  const double baseline_mean =
      have_baseline ? base_it->second.accuracy_sum / base_it->second.count : 0.0;
  std::vector<DeltaRow> rows;
  for (const auto &key : order) {
    const GroupStats &stats = groups.at(key);
    DeltaRow row;
    row.strategy = static_cast<GridStrategy>(key.first);
    row.ratio = key.second;
    row.num_seeds = stats.count;
    row.mean_accuracy_percent = stats.accuracy_sum / stats.count;
    row.mean_baseline_percent = baseline_mean;
    if (row.strategy == GridStrategy::kBaseline) row.mean_delta_percent = 0.0;
    else if (stats.delta_count > 0) row.mean_delta_percent = stats.delta_sum / stats.delta_count;
    else row.mean_delta_percent = std::nan("");
    rows.push_back(row);
  }
  return rows;
}

void write_delta_csv(const std::string &path, const std::vector<DeltaRow> &rows) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "strategy,ratio,num_seeds,mean_accuracy_percent,mean_baseline_percent,"
         "mean_delta_percent\n";
  for (const auto &row : rows) {
    out << grid_strategy_name(row.strategy) << ',' << row.ratio << ',' << row.num_seeds << ','
        << row.mean_accuracy_percent << ',' << row.mean_baseline_percent << ','
        << row.mean_delta_percent << '\n';
  }
  write_text_atomic(path, out.str());
}

std::string format_delta_table(const std::vector<DeltaRow> &rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %6s %6s %12s %12s %9s\n", "strategy", "ratio", "seeds",
                "accuracy%", "baseline%", "delta%");
  out << line;
  for (const auto &row : rows) {
    std::snprintf(line, sizeof(line), "%-16s %6d %6d %12.3f %12.3f %+9.3f\n",
                  grid_strategy_name(row.strategy).c_str(), row.ratio, row.num_seeds,
                  row.mean_accuracy_percent, row.mean_baseline_percent, row.mean_delta_percent);
    out << line;
  }
  return out.str();
}

std::vector<ScalingPoint> report_scaling(const std::vector<RunReport> &reports) {
  std::vector<std::pair<int, int>> order;
  const auto groups = group_reports(reports, &order);
  const auto base_it = groups.find({static_cast<int>(GridStrategy::kBaseline), 0});
  std::vector<ScalingPoint> points;
  std::vector<int> strategies;
  for (const auto &key : order)
    if (strategies.empty() || strategies.back() != key.first) strategies.push_back(key.first);
  for (int strategy_int : strategies) {
    const auto strategy = static_cast<GridStrategy>(strategy_int);
    if (strategy == GridStrategy::kBaseline) continue;
    if (base_it != groups.end() && base_it->second.count > 0) {
      const GroupStats &base = base_it->second;
      points.push_back({"hours", strategy, base.hours_sum / base.count,
                        base.accuracy_sum / base.count});
    }
    for (const auto &key : order) {
      if (key.first != strategy_int) continue;
      const GroupStats &stats = groups.at(key);
      points.push_back({"hours", strategy, stats.hours_sum / stats.count,
                        stats.accuracy_sum / stats.count});
    }
  }
  for (int strategy_int : strategies) {
    const auto strategy = static_cast<GridStrategy>(strategy_int);
    if (strategy == GridStrategy::kBaseline) continue;
    for (const auto &key : order) {
      if (key.first != strategy_int) continue;
      const GroupStats &stats = groups.at(key);
      if (stats.delta_count == 0) continue;
      points.push_back({"multiplier", strategy, static_cast<double>(key.second),
                        stats.delta_sum / stats.delta_count});
    }
  }
  return points;
}

void write_scaling_csv(const std::string &path, const std::vector<ScalingPoint> &points) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "kind,strategy,x,y\n";
  for (const auto &point : points)
    out << point.kind << ',' << grid_strategy_name(point.strategy) << ',' << point.x << ','
        << point.y << '\n';
  write_text_atomic(path, out.str());
}

CrossoverEstimate crossover_multiplier(const std::vector<std::pair<double, double>> &series,
                                       double target_delta) {
  CrossoverEstimate estimate;
  if (series.empty()) return estimate;
  for (size_t i = 1; i < series.size(); ++i)
    if (series[i].first <= series[i - 1].first)
      throw std::runtime_error("crossover_multiplier: series must be sorted by multiplier");
  estimate.max_delta = series.front().second;
  for (const auto &[x, y] : series) estimate.max_delta = std::max(estimate.max_delta, y);
  if (series.front().second >= target_delta) {
    estimate.reachable = true;
    estimate.already_exceeded = true;
    estimate.multiplier = series.front().first;
    return estimate;
  }
  for (size_t i = 1; i < series.size(); ++i) {
    const auto [x0, y0] = series[i - 1];
    const auto [x1, y1] = series[i];
    if (y1 >= target_delta) {
      estimate.reachable = true;
      estimate.multiplier = x0 + (target_delta - y0) * (x1 - x0) / (y1 - y0);
      return estimate;
    }
  }
  return estimate;
}

}  // namespace augssl
