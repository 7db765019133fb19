// include/augssl/grad_check.h

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

#ifndef AUGSSL_GRAD_CHECK_H_
#define AUGSSL_GRAD_CHECK_H_

#include <functional>
#include <vector>

#include "augssl/matrix.h"
#include "augssl/rng.h"

namespace augssl {

struct GradCheckReport {
  double max_rel_error = 0.0;
  size_t coords_checked = 0;

  bool within(double tolerance) const { return max_rel_error <= tolerance; }
};

// Compares analytic gradients against central finite differences
// (f(x+h) - f(x-h)) / 2h on a random coordinate subset of each parameter.
// loss_fn must recompute the loss from the current parameter values.
// The relative error of one coordinate is |fd - g| / max(|fd| + |g|, 1e-2);
// the floor keeps finite-difference noise on near-zero gradients from
// dominating the report.
GradCheckReport grad_check(const std::function<double()> &loss_fn,
                           const std::vector<Matrix *> &params,
                           const std::vector<const Matrix *> &analytic_grads, Rng &rng,
                           size_t coords_per_param = 20, double step = 1e-4);

}  // namespace augssl

#endif  // AUGSSL_GRAD_CHECK_H_
