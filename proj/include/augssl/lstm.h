// include/augssl/lstm.h

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

#ifndef AUGSSL_LSTM_H_
#define AUGSSL_LSTM_H_

#include <vector>

#include "augssl/matrix.h"
#include "augssl/rng.h"

namespace augssl {

// One LSTM layer. Gate blocks are concatenated in i, f, g, o order:
// w_ih is 4H x in, w_hh is 4H x H, bias 1 x 4H.
struct LstmLayerParams {
  Matrix w_ih;
  Matrix w_hh;
  Matrix bias;
};

struct LstmStackConfig {
  int input_dim = 80;
  int hidden_dim = 512;
  int num_layers = 3;

  void validate() const;
};

// Stacked unidirectional LSTM. Layers at depth 3 and above receive the sum
// of the two layers below them (residual skip), so all hidden dims must
// match.
struct LstmStackParams {
  LstmStackConfig config;
  std::vector<LstmLayerParams> layers;
};

// Same shapes as the parameters; used to accumulate gradients.
using LstmStackGrads = LstmStackParams;

LstmStackParams init_lstm_stack(const LstmStackConfig &config, Rng &rng);
LstmStackGrads zero_lstm_grads(const LstmStackConfig &config);

// Per-layer running state (h and c are 1 x H each).
struct LstmState {
  std::vector<Matrix> h;
  std::vector<Matrix> c;
};
LstmState zero_lstm_state(const LstmStackConfig &config);

// Activations retained by the forward pass for backprop. h and c carry the
// initial state in row 0 and the T step outputs in rows 1..T.
struct LstmLayerCache {
  Matrix inputs;  // T x in
  Matrix h;       // (T+1) x H
  Matrix c;       // (T+1) x H
  Matrix gates;   // T x 4H, post-activation, i f g o
  Matrix tanh_c;  // T x H
};
struct LstmCache {
  std::vector<LstmLayerCache> layers;
};

// Runs the stack over a T x input_dim sequence and returns the top layer's
// hidden states, T x hidden_dim. If state is non-null it supplies the
// initial h/c and receives the final ones; otherwise zero state is used.
// cache, if non-null, is filled for lstm_backward.
Matrix lstm_forward(const LstmStackParams &params, const Matrix &inputs,
                    LstmCache *cache = nullptr, LstmState *state = nullptr);

// Exact gradients of sum(grad_hidden * lstm_forward(inputs)). Parameter
// gradients are ACCUMULATED into *grads; returns the gradient wrt inputs.
Matrix lstm_backward(const LstmStackParams &params, const LstmCache &cache,
                     const Matrix &grad_hidden, LstmStackGrads *grads);

}  // namespace augssl

#endif  // AUGSSL_LSTM_H_
