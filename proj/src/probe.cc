// src/probe.cc

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

#include "augssl/probe.h"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "augssl/adam.h"
#include "augssl/log.h"
#include "augssl/losses.h"
#include "augssl/thread_pool.h"

namespace augssl {

ParamRegistry probe_param_registry(ProbeModel &model) {
  ParamRegistry registry = apc_param_registry(model.backbone);
  registry.push_back({"head.weight", &model.head.weight});
  registry.push_back({"head.bias", &model.head.bias});
  return registry;
}

void FinetuneConfig::validate() const {
  if (epochs < 0) throw std::runtime_error("finetune: negative epoch count");
  if (batch_size < 1) throw std::runtime_error("finetune: batch_size must be positive");
  if (learning_rate <= 0.0) throw std::runtime_error("finetune: learning_rate must be positive");
  if (max_frames_per_utterance < 1) {
    throw std::runtime_error("finetune: max_frames_per_utterance must be positive");
  }
}

std::string FinetuneConfig::to_json() const {
  nlohmann::ordered_json j;
  j["epochs"] = epochs;
  j["batch_size"] = batch_size;
  j["learning_rate"] = learning_rate;
  j["backbone_frozen"] = backbone_frozen;
  j["seed"] = seed;
  j["max_frames_per_utterance"] = max_frames_per_utterance;
  j["grad_clip_norm"] = grad_clip_norm;
  return j.dump();
}

FinetuneConfig FinetuneConfig::from_json(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("finetune config: ") + e.what());
  }
  FinetuneConfig config;
  for (const auto &[key, value] : j.items()) {
    if (key == "epochs") config.epochs = value.get<int>();
    else if (key == "batch_size") config.batch_size = value.get<int>();
    else if (key == "learning_rate") config.learning_rate = value.get<double>();
    else if (key == "backbone_frozen") config.backbone_frozen = value.get<bool>();
    else if (key == "seed") config.seed = value.get<uint64_t>();
    else if (key == "max_frames_per_utterance") config.max_frames_per_utterance = value.get<int>();
    else if (key == "grad_clip_norm") config.grad_clip_norm = value.get<double>();
    else throw std::runtime_error("finetune config: unknown key: " + key);
  }
  config.validate();
  return config;
}

namespace {

struct LabeledFeatures {
  std::vector<Matrix> frames;
  std::vector<std::vector<int>> labels;
  int num_classes = 0;
};

// Loads features and labels together, truncating both to the same bound and
// insisting on exact per-utterance alignment.
LabeledFeatures load_labeled(const Manifest &manifest, const FeatureConfig &features,
                             int max_frames, int num_threads) {
  std::vector<FeatureSequence> feats = load_manifest_features(manifest, features, num_threads);
  LabeledFeatures out;
  for (size_t i = 0; i < manifest.entries.size(); ++i) {
    const ManifestEntry &entry = manifest.entries[i];
    const auto labels_path = manifest.resolve_labels_path(entry);
    if (!labels_path) {
      throw std::runtime_error("finetune: missing labels for utterance " + entry.id);
    }
    FrameLabels labels = load_frame_labels(*labels_path);
    if (static_cast<int>(labels.labels.size()) != feats[i].frames.rows()) {
      throw std::runtime_error("finetune: utterance " + entry.id + " has " +
                               std::to_string(labels.labels.size()) + " labels for " +
                               std::to_string(feats[i].frames.rows()) + " frames");
    }
    if (out.num_classes == 0) {
      out.num_classes = labels.num_classes;
    } else if (labels.num_classes != out.num_classes) {
      throw std::runtime_error("finetune: inconsistent num_classes at utterance " + entry.id);
    }

    Matrix frames = std::move(feats[i].frames);
    if (frames.rows() > max_frames) {
      Matrix cut(max_frames, frames.cols());
      std::copy_n(frames.data().begin(), cut.size(), cut.data().begin());
      frames = std::move(cut);
      labels.labels.resize(max_frames);
    }
    out.frames.push_back(std::move(frames));
    out.labels.push_back(std::move(labels.labels));
  }
  return out;
}

}  // namespace

FinetuneResult finetune(const ApcModel &backbone, const Manifest &manifest,
                        const FeatureConfig &features, const FinetuneConfig &config,
                        int num_threads) {
  config.validate();
  if (manifest.empty()) throw std::runtime_error("finetune: empty manifest");
  LabeledFeatures data =
      load_labeled(manifest, features, config.max_frames_per_utterance, num_threads);
  if (data.num_classes < 2) throw std::runtime_error("finetune: need at least 2 classes");

  FinetuneResult result;
  result.probe.backbone = backbone;
  result.probe.backbone_frozen = config.backbone_frozen;
  result.probe.num_classes = data.num_classes;
  Rng init_rng(seed_combine(config.seed, "probe-init"));
  result.probe.head =
      init_linear(backbone.lstm.config.hidden_dim, data.num_classes, init_rng);
  ProbeModel &probe = result.probe;

  // Frozen backbone: representations are fixed, so compute them once.
  std::vector<Matrix> reprs;
  if (config.backbone_frozen) {
    reprs.resize(data.frames.size());
    parallel_for(data.frames.size(), num_threads, [&](size_t i) {
      reprs[i] = extract_repr(probe.backbone, data.frames[i]);
    });
  }

  std::vector<Matrix *> head_params = {&probe.head.weight, &probe.head.bias};
  ParamRegistry full_registry = probe_param_registry(probe);
  Adam adam(AdamConfig{.learning_rate = config.learning_rate});
  if (config.backbone_frozen) {
    adam.init(head_params);
  } else {
    adam.init(registry_matrices(full_registry));
  }

  std::vector<size_t> indices(data.frames.size());
  for (size_t i = 0; i < indices.size(); ++i) indices[i] = i;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::vector<size_t> order = indices;
    Rng shuffle_rng(seed_combine(seed_combine(config.seed, "finetune-shuffle"), epoch));
    shuffle_rng.shuffle(order);

    double loss_sum = 0.0;
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t end = std::min(order.size(), start + config.batch_size);
      const double inv_batch = 1.0 / static_cast<double>(end - start);

      LinearParams head_grads;
      head_grads.weight = Matrix(probe.head.weight.rows(), probe.head.weight.cols());
      head_grads.bias = Matrix(1, probe.head.bias.cols());
      ApcGrads backbone_grads;
      if (!config.backbone_frozen) backbone_grads = zero_apc_grads(probe.backbone);

      for (size_t b = start; b < end; ++b) {
        const size_t i = order[b];
        LstmCache cache;
        Matrix repr = config.backbone_frozen
                          ? reprs[i]
                          : lstm_forward(probe.backbone.lstm, data.frames[i], &cache);
        const Matrix logits = linear_forward(probe.head, repr);
        const Matrix log_probs = log_softmax_rows(logits);
        Matrix grad_logits;
        loss_sum += cross_entropy_from_log_probs(log_probs, data.labels[i], &grad_logits);

        LinearParams hg;
        const Matrix grad_repr = linear_backward(probe.head, repr, grad_logits, &hg);
        add_in_place(head_grads.weight, hg.weight);
        add_in_place(head_grads.bias, hg.bias);
        if (!config.backbone_frozen) {
          lstm_backward(probe.backbone.lstm, cache, grad_repr, &backbone_grads.lstm);
        }
      }

      std::vector<Matrix *> grad_ptrs;
      if (config.backbone_frozen) {
        grad_ptrs = {&head_grads.weight, &head_grads.bias};
      } else {
        grad_ptrs = apc_grad_matrices(backbone_grads);
        grad_ptrs.push_back(&head_grads.weight);
        grad_ptrs.push_back(&head_grads.bias);
      }
      for (Matrix *g : grad_ptrs) scale_in_place(*g, inv_batch);
      clip_gradients_by_norm(grad_ptrs, config.grad_clip_norm);

      if (config.backbone_frozen) {
        adam.step(head_params, std::vector<const Matrix *>(grad_ptrs.begin(), grad_ptrs.end()));
      } else {
        // The projection head takes no gradient from the probe loss; its
        // slots still ride along so the registry stays uniform.
        adam.step(registry_matrices(full_registry),
                  std::vector<const Matrix *>(grad_ptrs.begin(), grad_ptrs.end()));
      }
    }
    const double epoch_loss = loss_sum / static_cast<double>(order.size());
    result.epoch_losses.push_back(epoch_loss);
    log_info("finetune: epoch " + std::to_string(epoch) + "/" + std::to_string(config.epochs) +
             " loss " + std::to_string(epoch_loss));
  }
  return result;
}

std::vector<int> predict(const ProbeModel &probe, const Matrix &features) {
  const Matrix repr = extract_repr(probe.backbone, features);
  const Matrix log_probs = log_softmax_rows(linear_forward(probe.head, repr));
  std::vector<int> out(log_probs.rows());
  for (int t = 0; t < log_probs.rows(); ++t) {
    const double *row = log_probs.row(t);
    int best = 0;
    for (int k = 1; k < log_probs.cols(); ++k) {
      if (row[k] > row[best]) best = k;
    }
    out[t] = best;
  }
  return out;
}

double EvalReport::accuracy_from_confusion() const {
  long long correct = 0, total = 0;
  for (size_t i = 0; i < confusion.size(); ++i) {
    for (size_t j = 0; j < confusion[i].size(); ++j) {
      total += confusion[i][j];
      if (i == j) correct += confusion[i][j];
    }
  }
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

EvalReport evaluate(const ProbeModel &probe, const Manifest &test_manifest,
                    const FeatureConfig &features, int num_threads) {
  if (test_manifest.empty()) throw std::runtime_error("evaluate: empty manifest");
  const int num_classes = probe.num_classes;
  if (num_classes < 2) throw std::runtime_error("evaluate: probe has no class count");

  std::vector<std::vector<std::vector<long long>>> partial(
      test_manifest.size(),
      std::vector<std::vector<long long>>(num_classes, std::vector<long long>(num_classes, 0)));

  parallel_for(test_manifest.size(), num_threads, [&](size_t i) {
    const ManifestEntry &entry = test_manifest.entries[i];
    const auto labels_path = test_manifest.resolve_labels_path(entry);
    if (!labels_path) {
      throw std::runtime_error("evaluate: missing labels for utterance " + entry.id);
    }
    const FrameLabels labels = load_frame_labels(*labels_path);
    const FeatureSequence feats = features_for_entry(test_manifest, entry, features);
    if (static_cast<int>(labels.labels.size()) != feats.frames.rows()) {
      throw std::runtime_error("evaluate: utterance " + entry.id + " has " +
                               std::to_string(labels.labels.size()) + " labels for " +
                               std::to_string(feats.frames.rows()) + " frames");
    }
    const std::vector<int> pred = predict(probe, feats.frames);
    for (size_t t = 0; t < pred.size(); ++t) {
      const int truth = labels.labels[t];
      if (truth < 0 || truth >= num_classes) {
        throw std::runtime_error("evaluate: label out of range in utterance " + entry.id);
      }
      partial[i][truth][pred[t]] += 1;
    }
  });

  EvalReport report;
  report.confusion.assign(num_classes, std::vector<long long>(num_classes, 0));
  for (const auto &p : partial) {
    for (int a = 0; a < num_classes; ++a) {
      for (int b = 0; b < num_classes; ++b) report.confusion[a][b] += p[a][b];
    }
  }
  for (int a = 0; a < num_classes; ++a) {
    for (int b = 0; b < num_classes; ++b) {
      report.total_frames += report.confusion[a][b];
      if (a == b) report.correct_frames += report.confusion[a][b];
    }
  }
  report.frame_accuracy_percent =
      report.total_frames == 0
          ? 0.0
          : 100.0 * static_cast<double>(report.correct_frames) /
                static_cast<double>(report.total_frames);
  for (int a = 0; a < num_classes; ++a) {
    long long row_total = 0;
    for (int b = 0; b < num_classes; ++b) row_total += report.confusion[a][b];
    report.per_class_accuracy_percent.push_back(
        row_total == 0 ? 0.0
                       : 100.0 * static_cast<double>(report.confusion[a][a]) /
                             static_cast<double>(row_total));
  }
  return report;
}

void write_eval_report_csv(const std::string &path, const std::string &run_id,
                           double pretrain_hours, const std::string &strategy, int ratio,
                           const EvalReport &report) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("eval report: cannot open for write: " + path);
  os.precision(17);
  os << "run_id,pretrain_hours,strategy,ratio,frame_accuracy_percent,total_frames\n";
  os << run_id << "," << pretrain_hours << "," << strategy << "," << ratio << ","
     << report.frame_accuracy_percent << "," << report.total_frames << "\n";
  if (!os) throw std::runtime_error("eval report: write failed: " + path);
}

}  // namespace augssl
