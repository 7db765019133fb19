// include/augssl/adam.h

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

#ifndef AUGSSL_ADAM_H_
#define AUGSSL_ADAM_H_

#include <cstdint>
#include <vector>

#include "augssl/matrix.h"

namespace augssl {

struct AdamConfig {
  double learning_rate = 0.0001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Bias-corrected Adam over a fixed list of parameter matrices. The moment
// accumulators are laid out parallel to the parameter list passed to init.
class Adam {
 public:
  Adam() = default;
  explicit Adam(const AdamConfig &config) : config_(config) {}

  void init(const std::vector<Matrix *> &params);

  // One update. Throws on non-finite gradients or shape drift; increments
  // the step count by exactly 1.
  void step(const std::vector<Matrix *> &params, const std::vector<const Matrix *> &grads);

  int64_t step_count() const { return step_count_; }
  const AdamConfig &config() const { return config_; }

 private:
  AdamConfig config_;
  int64_t step_count_ = 0;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
};

// Scales all gradients by max_norm/global_norm when the global L2 norm
// exceeds max_norm. No-op for max_norm <= 0.
void clip_gradients_by_norm(const std::vector<Matrix *> &grads, double max_norm);

}  // namespace augssl

#endif  // AUGSSL_ADAM_H_
