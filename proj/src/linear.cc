// src/linear.cc

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

#include "augssl/linear.h"

#include <cmath>
#include <stdexcept>

namespace augssl {

LinearParams init_linear(int in_dim, int out_dim, Rng &rng) {
  if (in_dim <= 0 || out_dim <= 0) throw std::runtime_error("linear: dims must be positive");
  LinearParams params;
  params.weight = Matrix(out_dim, in_dim);
  params.bias = Matrix(1, out_dim);
  const double k = 1.0 / std::sqrt(static_cast<double>(in_dim));
  for (double &v : params.weight.data()) v = rng.uniform(-k, k);
  for (double &v : params.bias.data()) v = rng.uniform(-k, k);
  return params;
}

Matrix linear_forward(const LinearParams &params, const Matrix &x) {
  if (x.cols() != params.in_dim()) throw std::runtime_error("linear: input width mismatch");
  Matrix y = matmul_nt(x, params.weight);
  const double *b = params.bias.row(0);
  for (int t = 0; t < y.rows(); ++t) {
    double *yt = y.row(t);
    for (int j = 0; j < y.cols(); ++j) yt[j] += b[j];
  }
  return y;
}

Matrix linear_backward(const LinearParams &params, const Matrix &x, const Matrix &grad_out,
                       LinearParams *grads) {
  if (grad_out.rows() != x.rows() || grad_out.cols() != params.out_dim() ||
      x.cols() != params.in_dim()) {
    throw std::runtime_error("linear: backward shape mismatch");
  }
  grads->weight = matmul_tn(grad_out, x);
  grads->bias = column_sums(grad_out);
  return matmul(grad_out, params.weight);
}

}  // namespace augssl
