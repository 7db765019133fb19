// include/augssl/linear.h

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

#ifndef AUGSSL_LINEAR_H_
#define AUGSSL_LINEAR_H_

#include "augssl/matrix.h"
#include "augssl/rng.h"

namespace augssl {

// Affine layer y = x W^T + b. weight is out x in, bias 1 x out.
struct LinearParams {
  Matrix weight;
  Matrix bias;

  int in_dim() const { return weight.cols(); }
  int out_dim() const { return weight.rows(); }
};

// Uniform(-k, k) init for weight and bias, k = 1/sqrt(in_dim).
LinearParams init_linear(int in_dim, int out_dim, Rng &rng);

// x is T x in, result T x out.
Matrix linear_forward(const LinearParams &params, const Matrix &x);

// Exact gradients of sum(grad_out * forward(x)). Returns grad wrt x;
// grads->weight and grads->bias are overwritten.
Matrix linear_backward(const LinearParams &params, const Matrix &x, const Matrix &grad_out,
                       LinearParams *grads);

}  // namespace augssl

#endif  // AUGSSL_LINEAR_H_
