// src/apc.cc

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

#include "augssl/apc.h"

#include <json.hpp>

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "augssl/adam.h"
#include "augssl/log.h"
#include "augssl/losses.h"

namespace augssl {

ApcModel init_apc_model(const LstmStackConfig &config, uint64_t seed) {
  Rng rng(seed_combine(seed, "apc-init"));
  ApcModel model;
  model.lstm = init_lstm_stack(config, rng);
  model.projection = init_linear(config.hidden_dim, config.input_dim, rng);
  return model;
}

ParamRegistry apc_param_registry(ApcModel &model) {
  ParamRegistry registry;
  for (size_t l = 0; l < model.lstm.layers.size(); ++l) {
    const std::string prefix = "lstm." + std::to_string(l) + ".";
    registry.push_back({prefix + "w_ih", &model.lstm.layers[l].w_ih});
    registry.push_back({prefix + "w_hh", &model.lstm.layers[l].w_hh});
    registry.push_back({prefix + "bias", &model.lstm.layers[l].bias});
  }
  registry.push_back({"projection.weight", &model.projection.weight});
  registry.push_back({"projection.bias", &model.projection.bias});
  return registry;
}

ApcGrads zero_apc_grads(const ApcModel &model) {
  ApcGrads grads;
  grads.lstm = zero_lstm_grads(model.lstm.config);
  grads.projection.weight = Matrix(model.projection.weight.rows(), model.projection.weight.cols());
  grads.projection.bias = Matrix(1, model.projection.bias.cols());
  return grads;
}

std::vector<Matrix *> apc_grad_matrices(ApcGrads &grads) {
  std::vector<Matrix *> out;
  for (LstmLayerParams &layer : grads.lstm.layers) {
    out.push_back(&layer.w_ih);
    out.push_back(&layer.w_hh);
    out.push_back(&layer.bias);
  }
  out.push_back(&grads.projection.weight);
  out.push_back(&grads.projection.bias);
  return out;
}

void scale_apc_grads(ApcGrads &grads, double factor) {
  for (Matrix *m : apc_grad_matrices(grads)) scale_in_place(*m, factor);
}

void add_apc_grads(ApcGrads &into, const ApcGrads &other) {
  ApcGrads &mutable_other = const_cast<ApcGrads &>(other);
  std::vector<Matrix *> a = apc_grad_matrices(into);
  std::vector<Matrix *> b = apc_grad_matrices(mutable_other);
  for (size_t i = 0; i < a.size(); ++i) add_in_place(*a[i], *b[i]);
}

double apc_loss(const ApcModel &model, const Matrix &features, int time_shift,
                ApcGrads *grads) {
  if (time_shift < 1) throw std::runtime_error("apc_loss: time shift must be at least 1");
  const int t_len = features.rows();
  if (t_len <= time_shift) {
    throw std::runtime_error("apc_loss: sequence too short for the time shift");
  }
  const int dim = features.cols();
  const int pred_len = t_len - time_shift;

  LstmCache cache;
  const Matrix hidden = lstm_forward(model.lstm, features, grads ? &cache : nullptr);
  const Matrix outputs = linear_forward(model.projection, hidden);

  Matrix pred(pred_len, dim), target(pred_len, dim);
  std::memcpy(pred.data().data(), outputs.row(0),
              static_cast<size_t>(pred_len) * dim * sizeof(double));
  std::memcpy(target.data().data(), features.row(time_shift),
              static_cast<size_t>(pred_len) * dim * sizeof(double));

  Matrix pred_grad;
  const double loss = mse_loss(pred, target, grads ? &pred_grad : nullptr);
  if (!grads) return loss;

  Matrix grad_outputs(t_len, dim);
  std::memcpy(grad_outputs.data().data(), pred_grad.data().data(),
              static_cast<size_t>(pred_len) * dim * sizeof(double));
  LinearParams proj_grads;
  const Matrix grad_hidden =
      linear_backward(model.projection, hidden, grad_outputs, &proj_grads);
  add_in_place(grads->projection.weight, proj_grads.weight);
  add_in_place(grads->projection.bias, proj_grads.bias);
  lstm_backward(model.lstm, cache, grad_hidden, &grads->lstm);
  return loss;
}

Matrix extract_repr(const ApcModel &model, const Matrix &features) {
  return lstm_forward(model.lstm, features);
}

void PretrainConfig::validate() const {
  model.validate();
  if (time_shift < 1) throw std::runtime_error("pretrain: time_shift must be at least 1");
  if (epochs < 0) throw std::runtime_error("pretrain: negative epoch count");
  if (batch_size < 1) throw std::runtime_error("pretrain: batch_size must be positive");
  if (learning_rate <= 0.0) throw std::runtime_error("pretrain: learning_rate must be positive");
  if (max_frames_per_utterance < 1) {
    throw std::runtime_error("pretrain: max_frames_per_utterance must be positive");
  }
}

std::string PretrainConfig::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = {{"input_dim", model.input_dim},
                {"hidden_dim", model.hidden_dim},
                {"num_layers", model.num_layers}};
  j["time_shift"] = time_shift;
  j["epochs"] = epochs;
  j["batch_size"] = batch_size;
  j["learning_rate"] = learning_rate;
  j["seed"] = seed;
  j["max_frames_per_utterance"] = max_frames_per_utterance;
  j["grad_clip_norm"] = grad_clip_norm;
  return j.dump();
}

PretrainConfig PretrainConfig::from_json(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("pretrain config: ") + e.what());
  }
  PretrainConfig config;
  for (const auto &[key, value] : j.items()) {
    if (key == "model") {
      for (const auto &[mk, mv] : value.items()) {
        if (mk == "input_dim") config.model.input_dim = mv.get<int>();
        else if (mk == "hidden_dim") config.model.hidden_dim = mv.get<int>();
        else if (mk == "num_layers") config.model.num_layers = mv.get<int>();
        else throw std::runtime_error("pretrain config: unknown model key: " + mk);
      }
    } else if (key == "time_shift") {
      config.time_shift = value.get<int>();
    } else if (key == "epochs") {
      config.epochs = value.get<int>();
    } else if (key == "batch_size") {
      config.batch_size = value.get<int>();
    } else if (key == "learning_rate") {
      config.learning_rate = value.get<double>();
    } else if (key == "seed") {
      config.seed = value.get<uint64_t>();
    } else if (key == "max_frames_per_utterance") {
      config.max_frames_per_utterance = value.get<int>();
    } else if (key == "grad_clip_norm") {
      config.grad_clip_norm = value.get<double>();
    } else {
      throw std::runtime_error("pretrain config: unknown key: " + key);
    }
  }
  config.validate();
  return config;
}

namespace {

void truncate_frames(Matrix &frames, int max_frames) {
  if (frames.rows() <= max_frames) return;
  Matrix cut(max_frames, frames.cols());
  std::memcpy(cut.data().data(), frames.data().data(), cut.size() * sizeof(double));
  frames = std::move(cut);
}

}  // namespace

PretrainResult pretrain(const PretrainConfig &config, const Manifest &manifest,
                        const FeatureConfig &features, int num_threads) {
  config.validate();
  if (manifest.empty()) throw std::runtime_error("pretrain: empty manifest");

  std::vector<FeatureSequence> feats = load_manifest_features(manifest, features, num_threads);
  std::vector<size_t> usable;
  for (size_t i = 0; i < feats.size(); ++i) {
    truncate_frames(feats[i].frames, config.max_frames_per_utterance);
    if (feats[i].frames.rows() > config.time_shift) {
      usable.push_back(i);
    } else {
      log_warn("pretrain: skipping " + manifest.entries[i].id + " with " +
               std::to_string(feats[i].frames.rows()) + " frames (time shift " +
               std::to_string(config.time_shift) + ")");
    }
    if (feats[i].frames.cols() != config.model.input_dim) {
      throw std::runtime_error("pretrain: feature dim " +
                               std::to_string(feats[i].frames.cols()) +
                               " does not match model input dim");
    }
  }
  if (usable.empty()) throw std::runtime_error("pretrain: no utterance is long enough");

  PretrainResult result;
  result.model = init_apc_model(config.model, config.seed);
  ParamRegistry registry = apc_param_registry(result.model);
  Adam adam(AdamConfig{.learning_rate = config.learning_rate});
  adam.init(registry_matrices(registry));

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::vector<size_t> order = usable;
    Rng shuffle_rng(seed_combine(seed_combine(config.seed, "epoch-shuffle"), epoch));
    shuffle_rng.shuffle(order);

    double loss_sum = 0.0;
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t end = std::min(order.size(), start + config.batch_size);
      ApcGrads grads = zero_apc_grads(result.model);
      for (size_t b = start; b < end; ++b) {
        loss_sum += apc_loss(result.model, feats[order[b]].frames, config.time_shift, &grads);
      }
      scale_apc_grads(grads, 1.0 / static_cast<double>(end - start));
      std::vector<Matrix *> grad_ptrs = apc_grad_matrices(grads);
      clip_gradients_by_norm(grad_ptrs, config.grad_clip_norm);
      adam.step(registry_matrices(registry),
                std::vector<const Matrix *>(grad_ptrs.begin(), grad_ptrs.end()));
    }
    const double epoch_loss = loss_sum / static_cast<double>(order.size());
    result.epoch_losses.push_back(epoch_loss);
    log_info("pretrain: epoch " + std::to_string(epoch) + "/" +
             std::to_string(config.epochs) + " loss " + std::to_string(epoch_loss));
  }
  return result;
}

void write_loss_curve(const std::string &path, const std::vector<double> &epoch_losses) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("loss curve: cannot open for write: " + path);
  os << "epoch,loss\n";
  os.precision(17);
  for (size_t i = 0; i < epoch_losses.size(); ++i) {
    os << (i + 1) << "," << epoch_losses[i] << "\n";
  }
  if (!os) throw std::runtime_error("loss curve: write failed: " + path);
}

}  // namespace augssl
