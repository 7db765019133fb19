// include/augssl/probe.h

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

#ifndef AUGSSL_PROBE_H_
#define AUGSSL_PROBE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "augssl/apc.h"

namespace augssl {

// APC backbone plus a linear classification head over its representations.
struct ProbeModel {
  ApcModel backbone;
  LinearParams head;  // num_classes x hidden_dim
  bool backbone_frozen = true;
  int num_classes = 0;
};

ParamRegistry probe_param_registry(ProbeModel &model);

struct FinetuneConfig {
  int epochs = 20;
  int batch_size = 32;
  double learning_rate = 0.0001;
  bool backbone_frozen = true;
  uint64_t seed = 0;
  int max_frames_per_utterance = 2000;
  double grad_clip_norm = 0.0;

  void validate() const;
  std::string to_json() const;
  static FinetuneConfig from_json(const std::string &json_text);
};

struct FinetuneResult {
  ProbeModel probe;
  std::vector<double> epoch_losses;
};

// Trains the head (and the backbone too when unfrozen) with frame-level
// cross entropy and Adam over the labeled manifest. Every entry must carry
// labels whose length matches its frame count; mismatches are reported with
// the utterance id. Deterministic for a fixed config.
FinetuneResult finetune(const ApcModel &backbone, const Manifest &manifest,
                        const FeatureConfig &features, const FinetuneConfig &config,
                        int num_threads = 1);

// Per-frame argmax of log softmax over head logits.
std::vector<int> predict(const ProbeModel &probe, const Matrix &features);

struct EvalReport {
  double frame_accuracy_percent = 0.0;
  long long total_frames = 0;
  long long correct_frames = 0;
  std::vector<std::vector<long long>> confusion;  // [true][predicted]
  std::vector<double> per_class_accuracy_percent;

  // Recomputes accuracy from the confusion counts; must equal the scalar.
  double accuracy_from_confusion() const;
};

EvalReport evaluate(const ProbeModel &probe, const Manifest &test_manifest,
                    const FeatureConfig &features, int num_threads = 1);

void write_eval_report_csv(const std::string &path, const std::string &run_id,
                           double pretrain_hours, const std::string &strategy, int ratio,
                           const EvalReport &report);

}  // namespace augssl

#endif  // AUGSSL_PROBE_H_
