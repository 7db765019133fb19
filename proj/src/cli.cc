// src/cli.cc

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

#include "augssl/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "augssl/apc.h"
#include "augssl/apc_features.h"
#include "augssl/augment.h"
#include "augssl/checkpoint.h"
#include "augssl/grad_check.h"
#include "augssl/harness.h"
#include "augssl/log.h"
#include "augssl/losses.h"
#include "augssl/probe.h"
#include "augssl/rng.h"
#include "augssl/synth_corpus.h"
#include "augssl/version.h"

namespace fs = std::filesystem;

namespace augssl {

namespace {

std::string version_string() {
  std::ostringstream out;
  out << "augssl " << kToolkitVersion << " (feature file v" << kFeatureFileVersion
      << ", checkpoint v" << kCheckpointVersion << ")";
  return out.str();
}

std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string &path, const std::string &text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  fs::rename(tmp, path);
}

// Training config files bundle stage settings with the frontend, e.g.
// {"pretrain": {...}, "finetune": {...}, "features": {...}}. Each command
// reads the sections it needs and tolerates the sibling sections, so one
// file can drive the whole pretrain/finetune/featurize chain; anything
// else is treated as a typo.
nlohmann::json parse_config_file(const std::string &path,
                                 const std::vector<std::string> &allowed_keys) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  for (const auto &[key, value] : j.items()) {
    if (std::find(allowed_keys.begin(), allowed_keys.end(), key) == allowed_keys.end())
      throw std::runtime_error(path + ": unknown key: " + key);
  }
  return j;
}

struct SynthOptions {
  std::string out_dir;
  SynthCorpusSpec spec;
};

int cmd_synth_corpus(const SynthOptions &options) {
  const Manifest manifest = generate_synth_corpus(options.spec, StftConfig{}, options.out_dir);
  nlohmann::ordered_json sidecar;
  sidecar["tool"] = version_string();
  sidecar["num_utterances"] = options.spec.num_utterances;
  sidecar["utterance_duration_s"] = options.spec.utterance_duration_s;
  sidecar["num_phoneme_classes"] = options.spec.num_phoneme_classes;
  sidecar["sample_rate"] = options.spec.sample_rate;
  sidecar["seed"] = options.spec.seed;
  write_text(options.out_dir + "/corpus.json", sidecar.dump(2) + "\n");
  std::cout << "wrote " << manifest.size() << " utterances ("
            << manifest.total_duration_hours() << " h) to " << options.out_dir << std::endl;
  return 0;
}

struct FeaturizeOptions {
  std::string manifest_path;
  std::string out_dir;
  std::string config_path;
  bool standardize = false;
  uint64_t seed = 0;
  int jobs = 1;
};

int cmd_featurize(const FeaturizeOptions &options) {
  FeatureConfig config;
  if (!options.config_path.empty()) {
    nlohmann::json j =
        parse_config_file(options.config_path, {"pretrain", "finetune", "features"});
    if (!j.contains("features"))
      throw std::runtime_error(options.config_path + ": missing features section");
    config = feature_config_from_json(j["features"].dump());
  }
  if (options.standardize) config.standardize = true;
  const Manifest manifest = load_manifest(options.manifest_path);
  featurize_manifest(manifest, config, options.out_dir, options.jobs);
  nlohmann::ordered_json sidecar;
  sidecar["tool"] = version_string();
  sidecar["features"] = nlohmann::ordered_json::parse(feature_config_to_json(config));
  sidecar["seed"] = options.seed;
  write_text(options.out_dir + "/features.json", sidecar.dump(2) + "\n");
  std::cout << "wrote " << manifest.size() << " feature files to " << options.out_dir
            << std::endl;
  return 0;
}

struct AugmentOptions {
  std::string manifest_path;
  std::string out_dir;
  std::string strategy = "noise";
  int ratio = 1;
  uint64_t seed = 0;
  std::string noise_manifest_path;
  std::string other_manifest_path;
  bool stack_effects = false;
  std::vector<double> snr_choices_db;
  double semitone_min = -2.0;
  double semitone_max = 2.0;
  double dead_zone = 0.25;
  int jobs = 1;
};

int cmd_augment(const AugmentOptions &options) {
  AugmentationPlan plan;
  plan.base = load_manifest(options.manifest_path);
  plan.strategy = parse_aug_strategy(options.strategy);
  plan.ratio = options.ratio;
  plan.seed = options.seed;
  plan.stack_effects = options.stack_effects;
  if (plan.strategy == AugStrategy::kNoise || plan.strategy == AugStrategy::kNoisePitchMix) {
    if (options.noise_manifest_path.empty())
      throw std::runtime_error("--noise-manifest is required for this strategy");
    NoiseAugSpec noise;
    noise.noise_manifest = load_manifest(options.noise_manifest_path);
    if (!options.snr_choices_db.empty()) noise.snr_choices_db = options.snr_choices_db;
    plan.noise = noise;
  }
  if (plan.strategy == AugStrategy::kPitch || plan.strategy == AugStrategy::kNoisePitchMix) {
    PitchAugSpec pitch;
    pitch.semitone_min = options.semitone_min;
    pitch.semitone_max = options.semitone_max;
    pitch.dead_zone = options.dead_zone;
    plan.pitch = pitch;
  }
  if (plan.strategy == AugStrategy::kCorpusMix) {
    if (options.other_manifest_path.empty())
      throw std::runtime_error("--other-manifest is required for corpus_mix");
    plan.other = load_manifest(options.other_manifest_path);
  }
  const Manifest expanded = expand_plan(plan, options.out_dir, options.jobs);
  nlohmann::ordered_json sidecar;
  sidecar["tool"] = version_string();
  sidecar["strategy"] = aug_strategy_name(plan.strategy);
  sidecar["ratio"] = plan.ratio;
  sidecar["seed"] = plan.seed;
  sidecar["stack_effects"] = plan.stack_effects;
  if (plan.noise) sidecar["snr_choices_db"] = plan.noise->snr_choices_db;
  if (plan.pitch)
    sidecar["pitch"] = {{"semitone_min", plan.pitch->semitone_min},
                        {"semitone_max", plan.pitch->semitone_max},
                        {"dead_zone", plan.pitch->dead_zone}};
  write_text(options.out_dir + "/augment.json", sidecar.dump(2) + "\n");
  std::cout << "expanded " << plan.base.size() << " -> " << expanded.size() << " utterances ("
            << expanded.total_duration_hours() << " h) in " << options.out_dir << std::endl;
  return 0;
}

struct PretrainOptions {
  std::string manifest_path;
  std::string out_dir;
  std::string config_path;
  std::optional<uint64_t> seed;
  int jobs = 1;
};

int cmd_pretrain(const PretrainOptions &options) {
  PretrainConfig config;
  FeatureConfig features;
  if (!options.config_path.empty()) {
    nlohmann::json j =
        parse_config_file(options.config_path, {"pretrain", "finetune", "features"});
    if (j.contains("pretrain")) config = PretrainConfig::from_json(j["pretrain"].dump());
    if (j.contains("features")) features = feature_config_from_json(j["features"].dump());
  }
  if (options.seed) config.seed = *options.seed;
  const Manifest manifest = load_manifest(options.manifest_path);
  fs::create_directories(options.out_dir);
  const PretrainResult result = pretrain(config, manifest, features, options.jobs);
  write_loss_curve(options.out_dir + "/pretrain_loss.csv", result.epoch_losses);
  ApcModel model = result.model;
  nlohmann::ordered_json echo;
  echo["pretrain"] = nlohmann::ordered_json::parse(config.to_json());
  echo["features"] = nlohmann::ordered_json::parse(feature_config_to_json(features));
  save_checkpoint(options.out_dir + "/apc.ackp", apc_param_registry(model), echo.dump());
  std::cout << "pretrained on " << manifest.size() << " utterances, final loss "
            << (result.epoch_losses.empty() ? 0.0 : result.epoch_losses.back()) << ", wrote "
            << options.out_dir << "/apc.ackp" << std::endl;
  return 0;
}

// Rebuilds the model described by a pre-training checkpoint's config echo.
ApcModel load_apc_checkpoint(const std::string &path, FeatureConfig *features_out) {
  const Checkpoint checkpoint = load_checkpoint(path);
  nlohmann::json echo;
  try {
    echo = nlohmann::json::parse(checkpoint.config_json);
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(path + ": bad config echo: " + e.what());
  }
  if (!echo.contains("pretrain"))
    throw std::runtime_error(path + ": config echo lacks a pretrain section");
  const PretrainConfig config = PretrainConfig::from_json(echo["pretrain"].dump());
  ApcModel model = init_apc_model(config.model, 0);
  load_into_registry(checkpoint, apc_param_registry(model));
  if (features_out && echo.contains("features"))
    *features_out = feature_config_from_json(echo["features"].dump());
  return model;
}

struct FinetuneOptions {
  std::string checkpoint_path;
  std::string manifest_path;
  std::string out_dir;
  std::string config_path;
  std::optional<uint64_t> seed;
  int jobs = 1;
};

int cmd_finetune(const FinetuneOptions &options) {
  FeatureConfig features;
  const ApcModel backbone = load_apc_checkpoint(options.checkpoint_path, &features);
  FinetuneConfig config;
  if (!options.config_path.empty()) {
    nlohmann::json j =
        parse_config_file(options.config_path, {"pretrain", "finetune", "features"});
    if (j.contains("finetune")) config = FinetuneConfig::from_json(j["finetune"].dump());
    if (j.contains("features")) {
      FeatureConfig requested = feature_config_from_json(j["features"].dump());
      if (feature_config_to_json(requested) != feature_config_to_json(features))
        log_warn("finetune frontend settings differ from the checkpoint's; using the requested "
                 "settings");
      features = requested;
    }
  }
  if (options.seed) config.seed = *options.seed;
  const Manifest manifest = load_manifest(options.manifest_path);
  fs::create_directories(options.out_dir);
  FinetuneResult result = finetune(backbone, manifest, features, config, options.jobs);
  write_loss_curve(options.out_dir + "/finetune_loss.csv", result.epoch_losses);
  nlohmann::ordered_json echo;
  echo["finetune"] = nlohmann::ordered_json::parse(config.to_json());
  echo["features"] = nlohmann::ordered_json::parse(feature_config_to_json(features));
  echo["model"] = {{"input_dim", backbone.lstm.config.input_dim},
                   {"hidden_dim", backbone.lstm.config.hidden_dim},
                   {"num_layers", backbone.lstm.config.num_layers}};
  echo["num_classes"] = result.probe.num_classes;
  save_checkpoint(options.out_dir + "/probe.ackp", probe_param_registry(result.probe),
                  echo.dump());
  std::cout << "finetuned on " << manifest.size() << " utterances, wrote " << options.out_dir
            << "/probe.ackp" << std::endl;
  return 0;
}

struct EvaluateOptions {
  std::string checkpoint_path;
  std::string manifest_path;
  std::string out_path;
  std::string confusion_path;
  std::string run_id = "eval";
  std::string strategy = "none";
  int ratio = 0;
  double pretrain_hours = 0.0;
  int jobs = 1;
};

int cmd_evaluate(const EvaluateOptions &options) {
  const Checkpoint checkpoint = load_checkpoint(options.checkpoint_path);
  nlohmann::json echo;
  try {
    echo = nlohmann::json::parse(checkpoint.config_json);
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(options.checkpoint_path + ": bad config echo: " + e.what());
  }
  if (!echo.contains("model") || !echo.contains("num_classes"))
    throw std::runtime_error(options.checkpoint_path +
                             ": config echo lacks model dims or num_classes");
  LstmStackConfig model_config;
  model_config.input_dim = echo["model"].at("input_dim").get<int>();
  model_config.hidden_dim = echo["model"].at("hidden_dim").get<int>();
  model_config.num_layers = echo["model"].at("num_layers").get<int>();
  FeatureConfig features;
  if (echo.contains("features")) features = feature_config_from_json(echo["features"].dump());

  ProbeModel probe;
  probe.backbone = init_apc_model(model_config, 0);
  probe.num_classes = echo["num_classes"].get<int>();
  Rng head_rng(0);
  probe.head = init_linear(model_config.hidden_dim, probe.num_classes, head_rng);
  load_into_registry(checkpoint, probe_param_registry(probe));

  const Manifest manifest = load_manifest(options.manifest_path);
  const EvalReport report = evaluate(probe, manifest, features, options.jobs);
  write_eval_report_csv(options.out_path, options.run_id, options.pretrain_hours,
                        options.strategy, options.ratio, report);
  if (!options.confusion_path.empty()) {
    std::ostringstream out;
    for (const auto &row : report.confusion) {
      for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << '\n';
    }
    write_text(options.confusion_path, out.str());
  }
  std::cout << "frame accuracy " << report.frame_accuracy_percent << "% over "
            << report.total_frames << " frames" << std::endl;
  return 0;
}

void write_grid_reports(const std::vector<RunReport> &reports, const std::string &out_dir) {
  const std::vector<DeltaRow> rows = report_deltas(reports);
  write_delta_csv(out_dir + "/deltas.csv", rows);
  const std::vector<ScalingPoint> points = report_scaling(reports);
  write_scaling_csv(out_dir + "/scaling.csv", points);
  std::cout << format_delta_table(rows);

  // Crossover: the augmentation multiplier at which each strategy's gain
  // matches the gain of genuinely new clean data. The in-grid clean_extra
  // result is the target when present; the full-scale reference otherwise.
  double target = kReferenceCleanDataDeltaPercent;
  std::string target_source = "full_scale_reference";
  for (const DeltaRow &row : rows) {
    if (row.strategy != GridStrategy::kCleanExtra) continue;
    if (target_source != "clean_extra" || row.mean_delta_percent > target) {
      target = row.mean_delta_percent;
      target_source = "clean_extra";
    }
  }
  nlohmann::ordered_json crossover_json;
  crossover_json["target_delta_percent"] = target;
  crossover_json["target_source"] = target_source;
  crossover_json["reference"] = {
      {"baseline_accuracy_percent", kReferenceBaselineAccuracyPercent},
      {"clean_data_delta_percent", kReferenceCleanDataDeltaPercent},
      {"crossover_multiplier", kReferenceCrossoverMultiplier},
      {"mix_delta_at_ratio3_percent", kReferenceMixDeltaAtRatio3Percent}};
  crossover_json["strategies"] = nlohmann::ordered_json::object();
  std::cout << "crossover target: " << target << "% (" << target_source << ")\n";
  for (GridStrategy strategy : {GridStrategy::kCorpusMix, GridStrategy::kNoise,
                                GridStrategy::kPitch, GridStrategy::kNoisePitchMix}) {
    std::vector<std::pair<double, double>> series;
    for (const ScalingPoint &point : points)
      if (point.kind == "multiplier" && point.strategy == strategy)
        series.push_back({point.x, point.y});
    if (series.empty()) continue;
    const CrossoverEstimate estimate = crossover_multiplier(series, target);
    nlohmann::ordered_json entry;
    entry["reachable"] = estimate.reachable;
    entry["already_exceeded"] = estimate.already_exceeded;
    entry["multiplier"] = estimate.multiplier;
    entry["max_delta_percent"] = estimate.max_delta;
    crossover_json["strategies"][grid_strategy_name(strategy)] = entry;
    std::cout << grid_strategy_name(strategy) << ": ";
    if (estimate.already_exceeded)
      std::cout << "target already met at multiplier " << estimate.multiplier << "\n";
    else if (estimate.reachable)
      std::cout << "crossover at multiplier " << estimate.multiplier << "\n";
    else
      std::cout << "target not reached (max delta " << estimate.max_delta << "%)\n";
  }
  write_text(out_dir + "/crossover.json", crossover_json.dump(2) + "\n");
}

struct ExperimentOptions {
  std::string spec_path;
  std::string out_dir;
  int jobs = 1;
};

int cmd_experiment(const ExperimentOptions &options) {
  const ExperimentSpec spec = ExperimentSpec::load(options.spec_path);
  const std::vector<RunReport> reports = run_grid(spec, options.out_dir, options.jobs);
  write_grid_reports(reports, options.out_dir);
  int failed = 0;
  for (const auto &report : reports)
    if (report.status != "ok") ++failed;
  if (failed > 0) {
    std::cout << failed << " of " << reports.size() << " cells failed; see "
              << options.out_dir << "/cells" << std::endl;
  }
  return 0;
}

struct ReportOptions {
  std::string grid_dir;
  std::string out_dir;
};

int cmd_report(const ReportOptions &options) {
  const std::vector<RunReport> reports = load_cell_reports(options.grid_dir);
  if (reports.empty()) throw std::runtime_error("no cell reports under " + options.grid_dir);
  const std::string out_dir = options.out_dir.empty() ? options.grid_dir : options.out_dir;
  fs::create_directories(out_dir);
  write_grid_reports(reports, out_dir);
  return 0;
}

struct GradCheckOptions {
  uint64_t seed = 0;
  size_t coords = 1u << 20;  // exhaustive for the small models used here
};

void fill_uniform(Matrix *m, Rng &rng, double lo = -1.0, double hi = 1.0) {
  for (size_t r = 0; r < m->rows(); ++r)
    for (size_t c = 0; c < m->cols(); ++c) (*m)(r, c) = rng.uniform(lo, hi);
}

int cmd_gradcheck(const GradCheckOptions &options) {
  struct Line {
    std::string name;
    GradCheckReport report;
    double tolerance;
  };
  std::vector<Line> lines;

  {
    Rng rng(seed_combine(options.seed, "gradcheck-linear"));
    LinearParams params = init_linear(7, 4, rng);
    Matrix x(6, 7), target(6, 4);
    fill_uniform(&x, rng);
    fill_uniform(&target, rng);
    const Matrix out = linear_forward(params, x);
    Matrix grad_out;
    mse_loss(out, target, &grad_out);
    LinearParams grads;
    linear_backward(params, x, grad_out, &grads);
    auto loss = [&]() { return mse_loss(linear_forward(params, x), target); };
    GradCheckReport report = grad_check(loss, {&params.weight, &params.bias},
                                        {&grads.weight, &grads.bias}, rng, options.coords);
    lines.push_back({"linear_mse", report, 1e-6});
  }
  {
    Rng rng(seed_combine(options.seed, "gradcheck-xent"));
    Matrix logits(5, 8);
    fill_uniform(&logits, rng);
    std::vector<int> labels(5);
    for (int &label : labels) label = static_cast<int>(rng.uniform_index(8));
    Matrix grad_logits;
    cross_entropy_from_log_probs(log_softmax_rows(logits), labels, &grad_logits);
    auto loss = [&]() {
      return cross_entropy_from_log_probs(log_softmax_rows(logits), labels);
    };
    GradCheckReport report = grad_check(loss, {&logits}, {&grad_logits}, rng, options.coords);
    lines.push_back({"cross_entropy", report, 1e-5});
  }
  {
    Rng rng(seed_combine(options.seed, "gradcheck-lstm"));
    LstmStackConfig config;
    config.input_dim = 5;
    config.hidden_dim = 4;
    config.num_layers = 3;
    LstmStackParams params = init_lstm_stack(config, rng);
    Matrix inputs(4, 5), weights(4, 4);
    fill_uniform(&inputs, rng);
    fill_uniform(&weights, rng);
    LstmCache cache;
    lstm_forward(params, inputs, &cache);
    LstmStackGrads grads = zero_lstm_grads(config);
    const Matrix grad_inputs = lstm_backward(params, cache, weights, &grads);
    std::vector<Matrix *> param_ptrs;
    std::vector<const Matrix *> grad_ptrs;
    for (size_t l = 0; l < params.layers.size(); ++l) {
      param_ptrs.push_back(&params.layers[l].w_ih);
      param_ptrs.push_back(&params.layers[l].w_hh);
      param_ptrs.push_back(&params.layers[l].bias);
      grad_ptrs.push_back(&grads.layers[l].w_ih);
      grad_ptrs.push_back(&grads.layers[l].w_hh);
      grad_ptrs.push_back(&grads.layers[l].bias);
    }
    param_ptrs.push_back(&inputs);
    grad_ptrs.push_back(&grad_inputs);
    auto loss = [&]() {
      const Matrix out = lstm_forward(params, inputs);
      double total = 0.0;
      for (size_t r = 0; r < out.rows(); ++r)
        for (size_t c = 0; c < out.cols(); ++c) total += out(r, c) * weights(r, c);
      return total;
    };
    GradCheckReport report = grad_check(loss, param_ptrs, grad_ptrs, rng, options.coords);
    lines.push_back({"lstm_stack", report, 1e-3});
  }
  {
    Rng rng(seed_combine(options.seed, "gradcheck-apc"));
    LstmStackConfig config;
    config.input_dim = 6;
    config.hidden_dim = 5;
    config.num_layers = 3;
    ApcModel model = init_apc_model(config, options.seed);
    Matrix features(7, 6);
    fill_uniform(&features, rng);
    ApcGrads grads = zero_apc_grads(model);
    apc_loss(model, features, 2, &grads);
    const std::vector<Matrix *> param_ptrs = registry_matrices(apc_param_registry(model));
    std::vector<const Matrix *> grad_ptrs;
    for (Matrix *m : apc_grad_matrices(grads)) grad_ptrs.push_back(m);
    auto loss = [&]() { return apc_loss(model, features, 2); };
    GradCheckReport report = grad_check(loss, param_ptrs, grad_ptrs, rng, options.coords);
    lines.push_back({"apc_loss", report, 1e-3});
  }

  bool all_ok = true;
  for (const Line &line : lines) {
    const bool ok = line.report.within(line.tolerance);
    all_ok = all_ok && ok;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-14s coords %6zu  max rel %.3e  tol %.0e  %s\n",
                  line.name.c_str(), line.report.coords_checked, line.report.max_rel_error,
                  line.tolerance, ok ? "ok" : "FAIL");
    std::cout << buf;
  }
  if (!all_ok) throw std::runtime_error("gradient check failed");
  return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv) {
  CLI::App app{"speech data augmentation toolkit: synthetic corpora, log-mel features, "
               "augmentation, LSTM pre-training, phoneme probes, experiment grids"};
  app.name("augssl");
  app.set_version_flag("--version", version_string());
  app.require_subcommand(0, 1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "debug, info, warn or error")
      ->capture_default_str();

  SynthOptions synth;
  CLI::App *synth_cmd =
      app.add_subcommand("synth-corpus", "generate a labeled synthetic phoneme corpus");
  synth_cmd->add_option("--out", synth.out_dir, "output directory")->required();
  synth_cmd->add_option("--num-utterances", synth.spec.num_utterances, "corpus size")
      ->capture_default_str();
  synth_cmd->add_option("--duration-s", synth.spec.utterance_duration_s, "seconds per utterance")
      ->capture_default_str();
  synth_cmd->add_option("--classes", synth.spec.num_phoneme_classes, "phoneme classes (max 7)")
      ->capture_default_str();
  synth_cmd->add_option("--sample-rate", synth.spec.sample_rate, "sample rate in Hz")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.seed, "corpus seed")->capture_default_str();

  FeaturizeOptions featurize;
  CLI::App *featurize_cmd =
      app.add_subcommand("featurize", "write log-mel feature files for a manifest");
  featurize_cmd->add_option("--manifest", featurize.manifest_path, "input manifest")->required();
  featurize_cmd->add_option("--out", featurize.out_dir, "output directory")->required();
  featurize_cmd->add_option("--config", featurize.config_path,
                            "JSON config with a features section");
  featurize_cmd->add_flag("--standardize", featurize.standardize,
                          "per-utterance mean/variance normalization");
  featurize_cmd->add_option("--seed", featurize.seed, "recorded in the sidecar")
      ->capture_default_str();
  featurize_cmd->add_option("--jobs", featurize.jobs, "worker threads")->capture_default_str();

  AugmentOptions augment;
  CLI::App *augment_cmd =
      app.add_subcommand("augment", "expand a manifest with augmented copies");
  augment_cmd->add_option("--manifest", augment.manifest_path, "base manifest")->required();
  augment_cmd->add_option("--out", augment.out_dir, "output directory")->required();
  augment_cmd->add_option("--strategy", augment.strategy,
                          "noise, pitch, noise_pitch_mix or corpus_mix")
      ->capture_default_str();
  augment_cmd->add_option("--ratio", augment.ratio, "augmented copies per utterance")
      ->capture_default_str();
  augment_cmd->add_option("--seed", augment.seed, "augmentation seed")->capture_default_str();
  augment_cmd->add_option("--noise-manifest", augment.noise_manifest_path,
                          "noise source manifest");
  augment_cmd->add_option("--other-manifest", augment.other_manifest_path,
                          "corpus_mix source manifest");
  augment_cmd->add_flag("--stack-effects", augment.stack_effects,
                        "apply pitch and noise together instead of choosing one");
  augment_cmd->add_option("--snr-db", augment.snr_choices_db, "SNR choices in dB");
  augment_cmd->add_option("--semitone-min", augment.semitone_min, "lowest pitch shift")
      ->capture_default_str();
  augment_cmd->add_option("--semitone-max", augment.semitone_max, "highest pitch shift")
      ->capture_default_str();
  augment_cmd->add_option("--dead-zone", augment.dead_zone, "excluded band around 0 semitones")
      ->capture_default_str();
  augment_cmd->add_option("--jobs", augment.jobs, "worker threads")->capture_default_str();

  PretrainOptions pretrain_opts;
  CLI::App *pretrain_cmd =
      app.add_subcommand("pretrain", "future-prediction pre-training on a manifest");
  pretrain_cmd->add_option("--manifest", pretrain_opts.manifest_path, "training manifest")
      ->required();
  pretrain_cmd->add_option("--out", pretrain_opts.out_dir, "output directory")->required();
  pretrain_cmd->add_option("--config", pretrain_opts.config_path,
                           "JSON config with pretrain and features sections");
  uint64_t pretrain_seed = 0;
  CLI::Option *pretrain_seed_opt =
      pretrain_cmd->add_option("--seed", pretrain_seed, "overrides the config seed");
  pretrain_cmd->add_option("--jobs", pretrain_opts.jobs, "worker threads")
      ->capture_default_str();

  FinetuneOptions finetune_opts;
  CLI::App *finetune_cmd =
      app.add_subcommand("finetune", "train a frame-level phoneme probe on a checkpoint");
  finetune_cmd->add_option("--checkpoint", finetune_opts.checkpoint_path,
                           "pre-trained model checkpoint")
      ->required();
  finetune_cmd->add_option("--manifest", finetune_opts.manifest_path, "labeled manifest")
      ->required();
  finetune_cmd->add_option("--out", finetune_opts.out_dir, "output directory")->required();
  finetune_cmd->add_option("--config", finetune_opts.config_path,
                           "JSON config with finetune and features sections");
  uint64_t finetune_seed = 0;
  CLI::Option *finetune_seed_opt =
      finetune_cmd->add_option("--seed", finetune_seed, "overrides the config seed");
  finetune_cmd->add_option("--jobs", finetune_opts.jobs, "worker threads")
      ->capture_default_str();

  EvaluateOptions evaluate_opts;
  CLI::App *evaluate_cmd =
      app.add_subcommand("evaluate", "frame accuracy of a probe checkpoint on a manifest");
  evaluate_cmd->add_option("--checkpoint", evaluate_opts.checkpoint_path, "probe checkpoint")
      ->required();
  evaluate_cmd->add_option("--manifest", evaluate_opts.manifest_path, "labeled test manifest")
      ->required();
  evaluate_cmd->add_option("--out", evaluate_opts.out_path, "output CSV path")->required();
  evaluate_cmd->add_option("--confusion", evaluate_opts.confusion_path,
                           "optional confusion matrix CSV path");
  evaluate_cmd->add_option("--run-id", evaluate_opts.run_id, "run id column value")
      ->capture_default_str();
  evaluate_cmd->add_option("--strategy", evaluate_opts.strategy, "strategy column value")
      ->capture_default_str();
  evaluate_cmd->add_option("--ratio", evaluate_opts.ratio, "ratio column value")
      ->capture_default_str();
  evaluate_cmd->add_option("--pretrain-hours", evaluate_opts.pretrain_hours,
                           "pretrain hours column value")
      ->capture_default_str();
  evaluate_cmd->add_option("--jobs", evaluate_opts.jobs, "worker threads")
      ->capture_default_str();

  ExperimentOptions experiment;
  CLI::App *experiment_cmd =
      app.add_subcommand("experiment", "run a strategy x ratio x seed grid from a spec");
  experiment_cmd->add_option("--spec", experiment.spec_path, "experiment spec JSON")->required();
  experiment_cmd->add_option("--out", experiment.out_dir, "grid output directory")->required();
  experiment_cmd->add_option("--jobs", experiment.jobs, "cells run in parallel")
      ->capture_default_str();

  ReportOptions report;
  CLI::App *report_cmd =
      app.add_subcommand("report", "regenerate delta and scaling reports from grid cells");
  report_cmd->add_option("--grid", report.grid_dir, "grid output directory")->required();
  report_cmd->add_option("--out", report.out_dir, "report directory (default: grid dir)");

  GradCheckOptions gradcheck;
  CLI::App *gradcheck_cmd =
      app.add_subcommand("gradcheck", "finite-difference check of all backward passes");
  gradcheck_cmd->add_option("--seed", gradcheck.seed, "check seed")->capture_default_str();
  gradcheck_cmd->add_option("--coords", gradcheck.coords, "coordinates checked per parameter")
      ->capture_default_str();

  for (CLI::App *sub : app.get_subcommands([](const CLI::App *) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion &e) {
    std::cout << version_string() << std::endl;
    return 0;
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << std::endl;
    std::cerr << "run 'augssl --help' for usage" << std::endl;
    return 2;
  }

  try {
    set_log_level(parse_log_level(log_level));
    if (*pretrain_seed_opt) pretrain_opts.seed = pretrain_seed;
    if (*finetune_seed_opt) finetune_opts.seed = finetune_seed;
    if (synth_cmd->parsed()) return cmd_synth_corpus(synth);
    if (featurize_cmd->parsed()) return cmd_featurize(featurize);
    if (augment_cmd->parsed()) return cmd_augment(augment);
    if (pretrain_cmd->parsed()) return cmd_pretrain(pretrain_opts);
    if (finetune_cmd->parsed()) return cmd_finetune(finetune_opts);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate_opts);
    if (experiment_cmd->parsed()) return cmd_experiment(experiment);
    if (report_cmd->parsed()) return cmd_report(report);
    if (gradcheck_cmd->parsed()) return cmd_gradcheck(gradcheck);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }

  std::cerr << app.help();
  return 2;
}

}  // namespace augssl
