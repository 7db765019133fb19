// src/grad_check.cc

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

#include "augssl/grad_check.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace augssl {

GradCheckReport grad_check(const std::function<double()> &loss_fn,
                           const std::vector<Matrix *> &params,
                           const std::vector<const Matrix *> &analytic_grads, Rng &rng,
                           size_t coords_per_param, double step) {
  if (params.size() != analytic_grads.size()) {
    throw std::runtime_error("grad_check: parameter and gradient lists differ");
  }
  GradCheckReport report;
  for (size_t i = 0; i < params.size(); ++i) {
    Matrix &p = *params[i];
    const Matrix &g = *analytic_grads[i];
    if (!p.same_shape(g)) throw std::runtime_error("grad_check: gradient shape mismatch");

    const size_t n = p.size();
    const size_t count = std::min(coords_per_param, n);
    for (size_t c = 0; c < count; ++c) {
      const size_t j = count == n ? c : rng.uniform_index(n);
      const double saved = p.data()[j];
      p.data()[j] = saved + step;
      const double up = loss_fn();
      p.data()[j] = saved - step;
      const double down = loss_fn();
      p.data()[j] = saved;

      const double fd = (up - down) / (2.0 * step);
      const double analytic = g.data()[j];
      const double rel = std::fabs(fd - analytic) /
                         std::max(std::fabs(fd) + std::fabs(analytic), 1e-2);
      report.max_rel_error = std::max(report.max_rel_error, rel);
      ++report.coords_checked;
    }
  }
  return report;
}

}  // namespace augssl
