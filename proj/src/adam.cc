// src/adam.cc

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

#include "augssl/adam.h"

#include <cmath>
#include <stdexcept>

namespace augssl {

void Adam::init(const std::vector<Matrix *> &params) {
  m_.clear();
  v_.clear();
  step_count_ = 0;
  for (const Matrix *p : params) {
    m_.emplace_back(p->rows(), p->cols());
    v_.emplace_back(p->rows(), p->cols());
  }
}

void Adam::step(const std::vector<Matrix *> &params, const std::vector<const Matrix *> &grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw std::runtime_error("adam: parameter list does not match init");
  }
  ++step_count_;
  const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_count_));
  const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_count_));

  for (size_t i = 0; i < params.size(); ++i) {
    Matrix &p = *params[i];
    const Matrix &g = *grads[i];
    if (!p.same_shape(g) || !p.same_shape(m_[i])) {
      throw std::runtime_error("adam: gradient shape mismatch");
    }
    check_finite(g, "adam gradient");
    double *pm = m_[i].data().data();
    double *pv = v_[i].data().data();
    double *pp = p.data().data();
    const double *pg = g.data().data();
    for (size_t j = 0; j < p.size(); ++j) {
      pm[j] = config_.beta1 * pm[j] + (1.0 - config_.beta1) * pg[j];
      pv[j] = config_.beta2 * pv[j] + (1.0 - config_.beta2) * pg[j] * pg[j];
      const double m_hat = pm[j] / bc1;
      const double v_hat = pv[j] / bc2;
      pp[j] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
  }
}

void clip_gradients_by_norm(const std::vector<Matrix *> &grads, double max_norm) {
  if (max_norm <= 0.0) return;
  double sq = 0.0;
  for (const Matrix *g : grads) {
    for (double v : g->data()) sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm <= max_norm) return;
  const double scale = max_norm / norm;
  for (Matrix *g : grads) scale_in_place(*g, scale);
}

}  // namespace augssl
