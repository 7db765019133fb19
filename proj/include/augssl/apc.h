// include/augssl/apc.h

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

#ifndef AUGSSL_APC_H_
#define AUGSSL_APC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "augssl/apc_features.h"
#include "augssl/checkpoint.h"
#include "augssl/linear.h"
#include "augssl/lstm.h"
#include "augssl/manifest.h"

namespace augssl {

// LSTM stack plus the linear head that maps hidden states back to feature
// space for future-frame prediction.
struct ApcModel {
  LstmStackParams lstm;
  LinearParams projection;
};

ApcModel init_apc_model(const LstmStackConfig &config, uint64_t seed);

// Stable names for checkpoints and the optimizer, in a fixed order:
// lstm.<layer>.{w_ih,w_hh,bias}, then projection.{weight,bias}.
ParamRegistry apc_param_registry(ApcModel &model);

// Gradients in the same shapes as the model.
struct ApcGrads {
  LstmStackGrads lstm;
  LinearParams projection;
};
ApcGrads zero_apc_grads(const ApcModel &model);
std::vector<Matrix *> apc_grad_matrices(ApcGrads &grads);
void scale_apc_grads(ApcGrads &grads, double factor);
void add_apc_grads(ApcGrads &into, const ApcGrads &other);

// Mean squared error of predicting features n steps ahead: prediction rows
// [0, T-n) against feature rows [n, T). Requires T > n. Gradients, if
// requested, are ACCUMULATED into *grads.
double apc_loss(const ApcModel &model, const Matrix &features, int time_shift,
                ApcGrads *grads = nullptr);

// Final-layer hidden states, T x hidden_dim; the representation consumed by
// the downstream probe.
Matrix extract_repr(const ApcModel &model, const Matrix &features);

struct PretrainConfig {
  LstmStackConfig model;
  int time_shift = 3;
  int epochs = 100;
  int batch_size = 32;
  double learning_rate = 0.0001;
  uint64_t seed = 0;
  int max_frames_per_utterance = 2000;
  double grad_clip_norm = 0.0;  // 0 disables clipping

  void validate() const;
  std::string to_json() const;
  static PretrainConfig from_json(const std::string &json_text);
};

struct PretrainResult {
  ApcModel model;
  std::vector<double> epoch_losses;  // mean per-utterance loss per epoch
};

// Seeded-shuffle epochs over the manifest, per-utterance losses at native
// length averaged within each batch, one Adam step per batch. Deterministic
// for a fixed config. Label files are never read. Utterances with too few
// frames for the time shift are skipped with a warning.
PretrainResult pretrain(const PretrainConfig &config, const Manifest &manifest,
                        const FeatureConfig &features, int num_threads = 1);

void write_loss_curve(const std::string &path, const std::vector<double> &epoch_losses);

}  // namespace augssl

#endif  // AUGSSL_APC_H_
