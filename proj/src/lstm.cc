// src/lstm.cc

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

#include "augssl/lstm.h"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace augssl {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// One layer of the stack over the whole sequence. h and c in the cache carry
// the initial state in row 0.
void layer_forward(const LstmLayerParams &params, const Matrix &inputs,
                   const double *h_init, const double *c_init, LstmLayerCache *cache) {
  const int t_len = inputs.rows();
  const int hidden = params.w_hh.cols();
  const int gates4 = 4 * hidden;

  cache->inputs = inputs;
  cache->h = Matrix(t_len + 1, hidden);
  cache->c = Matrix(t_len + 1, hidden);
  cache->gates = Matrix(t_len, gates4);
  cache->tanh_c = Matrix(t_len, hidden);
  std::memcpy(cache->h.row(0), h_init, hidden * sizeof(double));
  std::memcpy(cache->c.row(0), c_init, hidden * sizeof(double));

  Matrix z_in = matmul_nt(inputs, params.w_ih);  // T x 4H
  const double *bias = params.bias.row(0);

  std::vector<double> z(gates4);
  for (int t = 0; t < t_len; ++t) {
    const double *zi = z_in.row(t);
    const double *h_prev = cache->h.row(t);
    const double *c_prev = cache->c.row(t);
    for (int j = 0; j < gates4; ++j) z[j] = zi[j] + bias[j];
    for (int j = 0; j < gates4; ++j) {
      const double *w = params.w_hh.row(j);
      double acc = 0.0;
      for (int k = 0; k < hidden; ++k) acc += w[k] * h_prev[k];
      z[j] += acc;
    }

    double *gates = cache->gates.row(t);
    double *h_out = cache->h.row(t + 1);
    double *c_out = cache->c.row(t + 1);
    double *tanh_c = cache->tanh_c.row(t);
    for (int k = 0; k < hidden; ++k) {
      const double gi = sigmoid(z[k]);
      const double gf = sigmoid(z[hidden + k]);
      const double gg = std::tanh(z[2 * hidden + k]);
      const double go = sigmoid(z[3 * hidden + k]);
      gates[k] = gi;
      gates[hidden + k] = gf;
      gates[2 * hidden + k] = gg;
      gates[3 * hidden + k] = go;
      c_out[k] = gf * c_prev[k] + gi * gg;
      tanh_c[k] = std::tanh(c_out[k]);
      h_out[k] = go * tanh_c[k];
    }
  }
}

// Gradients for one layer. grad_hidden is T x H; parameter grads are
// accumulated; returns grad wrt the layer inputs.
Matrix layer_backward(const LstmLayerParams &params, const LstmLayerCache &cache,
                      const Matrix &grad_hidden, LstmLayerParams *grads) {
  const int t_len = cache.inputs.rows();
  const int hidden = params.w_hh.cols();
  const int gates4 = 4 * hidden;

  Matrix da(t_len, gates4);  // pre-activation gate grads
  std::vector<double> dh(hidden), dc_next(hidden, 0.0), dh_carry(hidden, 0.0);

  for (int t = t_len - 1; t >= 0; --t) {
    const double *gates = cache.gates.row(t);
    const double *tanh_c = cache.tanh_c.row(t);
    const double *c_prev = cache.c.row(t);
    const double *up = grad_hidden.row(t);
    double *da_t = da.row(t);

    for (int k = 0; k < hidden; ++k) {
      const double gi = gates[k];
      const double gf = gates[hidden + k];
      const double gg = gates[2 * hidden + k];
      const double go = gates[3 * hidden + k];
      const double tc = tanh_c[k];

      const double dh_k = up[k] + dh_carry[k];
      const double dc_k = dh_k * go * (1.0 - tc * tc) + dc_next[k];

      da_t[k] = dc_k * gg * gi * (1.0 - gi);
      da_t[hidden + k] = dc_k * c_prev[k] * gf * (1.0 - gf);
      da_t[2 * hidden + k] = dc_k * gi * (1.0 - gg * gg);
      da_t[3 * hidden + k] = dh_k * tc * go * (1.0 - go);
      dc_next[k] = dc_k * gf;
    }

    std::fill(dh_carry.begin(), dh_carry.end(), 0.0);
    for (int j = 0; j < gates4; ++j) {
      const double a = da_t[j];
      if (a == 0.0) continue;
      const double *w = params.w_hh.row(j);
      for (int k = 0; k < hidden; ++k) dh_carry[k] += a * w[k];
    }
  }

  add_in_place(grads->w_ih, matmul_tn(da, cache.inputs));
  Matrix h_prev(t_len, hidden);
  std::memcpy(h_prev.data().data(), cache.h.data().data(),
              static_cast<size_t>(t_len) * hidden * sizeof(double));
  add_in_place(grads->w_hh, matmul_tn(da, h_prev));
  add_in_place(grads->bias, column_sums(da));
  return matmul(da, params.w_ih);
}

}  // namespace

void LstmStackConfig::validate() const {
  if (input_dim <= 0 || hidden_dim <= 0 || num_layers <= 0) {
    throw std::runtime_error("lstm: dims and layer count must be positive");
  }
}

LstmStackParams init_lstm_stack(const LstmStackConfig &config, Rng &rng) {
  config.validate();
  LstmStackParams params;
  params.config = config;
  for (int l = 0; l < config.num_layers; ++l) {
    const int in = l == 0 ? config.input_dim : config.hidden_dim;
    LstmLayerParams layer;
    layer.w_ih = Matrix(4 * config.hidden_dim, in);
    layer.w_hh = Matrix(4 * config.hidden_dim, config.hidden_dim);
    layer.bias = Matrix(1, 4 * config.hidden_dim);
    const double k_in = 1.0 / std::sqrt(static_cast<double>(in));
    const double k_h = 1.0 / std::sqrt(static_cast<double>(config.hidden_dim));
    for (double &v : layer.w_ih.data()) v = rng.uniform(-k_in, k_in);
    for (double &v : layer.w_hh.data()) v = rng.uniform(-k_h, k_h);
    for (double &v : layer.bias.data()) v = rng.uniform(-k_h, k_h);
    params.layers.push_back(std::move(layer));
  }
  return params;
}

LstmStackGrads zero_lstm_grads(const LstmStackConfig &config) {
  LstmStackGrads grads;
  grads.config = config;
  for (int l = 0; l < config.num_layers; ++l) {
    const int in = l == 0 ? config.input_dim : config.hidden_dim;
    LstmLayerParams layer;
    layer.w_ih = Matrix(4 * config.hidden_dim, in);
    layer.w_hh = Matrix(4 * config.hidden_dim, config.hidden_dim);
    layer.bias = Matrix(1, 4 * config.hidden_dim);
    grads.layers.push_back(std::move(layer));
  }
  return grads;
}

LstmState zero_lstm_state(const LstmStackConfig &config) {
  LstmState state;
  for (int l = 0; l < config.num_layers; ++l) {
    state.h.emplace_back(1, config.hidden_dim);
    state.c.emplace_back(1, config.hidden_dim);
  }
  return state;
}

Matrix lstm_forward(const LstmStackParams &params, const Matrix &inputs, LstmCache *cache,
                    LstmState *state) {
  params.config.validate();
  if (inputs.cols() != params.config.input_dim) {
    throw std::runtime_error("lstm: input width mismatch");
  }
  if (inputs.rows() < 1) throw std::runtime_error("lstm: empty input sequence");
  if (static_cast<int>(params.layers.size()) != params.config.num_layers) {
    throw std::runtime_error("lstm: layer count mismatch");
  }

  const int t_len = inputs.rows();
  const int hidden = params.config.hidden_dim;
  LstmState local = state ? *state : zero_lstm_state(params.config);
  LstmCache local_cache;
  LstmCache *cc = cache ? cache : &local_cache;
  cc->layers.assign(params.config.num_layers, LstmLayerCache{});

  Matrix layer_in = inputs;
  for (int l = 0; l < params.config.num_layers; ++l) {
    if (l >= 2) {
      // Residual skip: this layer sees the sum of the two layers below.
      const Matrix &below2 = cc->layers[l - 2].h;
      for (int t = 0; t < t_len; ++t) {
        const double *src = below2.row(t + 1);
        double *dst = layer_in.row(t);
        for (int k = 0; k < hidden; ++k) dst[k] += src[k];
      }
    }
    layer_forward(params.layers[l], layer_in, local.h[l].row(0), local.c[l].row(0),
                  &cc->layers[l]);
    if (state) {
      std::memcpy(local.h[l].row(0), cc->layers[l].h.row(t_len), hidden * sizeof(double));
      std::memcpy(local.c[l].row(0), cc->layers[l].c.row(t_len), hidden * sizeof(double));
    }
    layer_in = Matrix(t_len, hidden);
    std::memcpy(layer_in.data().data(), cc->layers[l].h.row(1),
                static_cast<size_t>(t_len) * hidden * sizeof(double));
  }
  if (state) *state = local;
  check_finite(layer_in, "lstm_forward");
  return layer_in;
}

Matrix lstm_backward(const LstmStackParams &params, const LstmCache &cache,
                     const Matrix &grad_hidden, LstmStackGrads *grads) {
  const int num_layers = params.config.num_layers;
  if (static_cast<int>(cache.layers.size()) != num_layers) {
    throw std::runtime_error("lstm: cache layer count mismatch");
  }
  const int t_len = cache.layers[0].inputs.rows();
  if (grad_hidden.rows() != t_len || grad_hidden.cols() != params.config.hidden_dim) {
    throw std::runtime_error("lstm: grad_hidden shape mismatch");
  }

  std::vector<Matrix> dh(num_layers);
  dh[num_layers - 1] = grad_hidden;
  for (int l = num_layers - 1; l >= 1; --l) {
    if (dh[l].size() == 0) dh[l] = Matrix(t_len, params.config.hidden_dim);
    Matrix dx = layer_backward(params.layers[l], cache.layers[l], dh[l], &grads->layers[l]);
    if (dh[l - 1].size() == 0) dh[l - 1] = Matrix(t_len, params.config.hidden_dim);
    add_in_place(dh[l - 1], dx);
    if (l >= 2) {
      if (dh[l - 2].size() == 0) dh[l - 2] = Matrix(t_len, params.config.hidden_dim);
      add_in_place(dh[l - 2], dx);
    }
  }
  if (dh[0].size() == 0) dh[0] = Matrix(t_len, params.config.hidden_dim);
  return layer_backward(params.layers[0], cache.layers[0], dh[0], &grads->layers[0]);
}

}  // namespace augssl
