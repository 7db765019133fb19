// src/losses.cc

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

#include "augssl/losses.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace augssl {

double mse_loss(const Matrix &pred, const Matrix &target, Matrix *grad) {
  if (!pred.same_shape(target)) throw std::runtime_error("mse_loss: shape mismatch");
  if (pred.size() == 0) throw std::runtime_error("mse_loss: empty input");
  const double inv_n = 1.0 / static_cast<double>(pred.size());
  double loss = 0.0;
  if (grad) *grad = Matrix(pred.rows(), pred.cols());
  for (size_t i = 0; i < pred.size(); ++i) {
    const double d = pred.data()[i] - target.data()[i];
    loss += d * d;
    if (grad) grad->data()[i] = 2.0 * d * inv_n;
  }
  return loss * inv_n;
}

std::vector<double> log_softmax(const std::vector<double> &x) {
  if (x.empty()) throw std::runtime_error("log_softmax: empty input");
  const double m = *std::max_element(x.begin(), x.end());
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - m);
  const double log_z = m + std::log(sum);
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - log_z;
  return out;
}

Matrix log_softmax_rows(const Matrix &logits) {
  Matrix out(logits.rows(), logits.cols());
  for (int t = 0; t < logits.rows(); ++t) {
    const double *row = logits.row(t);
    double m = row[0];
    for (int k = 1; k < logits.cols(); ++k) m = std::max(m, row[k]);
    double sum = 0.0;
    for (int k = 0; k < logits.cols(); ++k) sum += std::exp(row[k] - m);
    const double log_z = m + std::log(sum);
    double *o = out.row(t);
    for (int k = 0; k < logits.cols(); ++k) o[k] = row[k] - log_z;
  }
  return out;
}

double cross_entropy_from_log_probs(const Matrix &log_probs, const std::vector<int> &labels,
                                    Matrix *grad_logits) {
  if (static_cast<size_t>(log_probs.rows()) != labels.size()) {
    throw std::runtime_error("cross_entropy: label count does not match rows");
  }
  if (log_probs.rows() == 0) throw std::runtime_error("cross_entropy: empty input");
  const double inv_t = 1.0 / static_cast<double>(log_probs.rows());
  double loss = 0.0;
  if (grad_logits) *grad_logits = Matrix(log_probs.rows(), log_probs.cols());
  for (int t = 0; t < log_probs.rows(); ++t) {
    const int label = labels[t];
    if (label < 0 || label >= log_probs.cols()) {
      throw std::runtime_error("cross_entropy: label out of range at frame " +
                               std::to_string(t));
    }
    loss -= log_probs(t, label);
    if (grad_logits) {
      const double *lp = log_probs.row(t);
      double *g = grad_logits->row(t);
      for (int k = 0; k < log_probs.cols(); ++k) g[k] = std::exp(lp[k]) * inv_t;
      g[label] -= inv_t;
    }
  }
  return loss * inv_t;
}

}  // namespace augssl
