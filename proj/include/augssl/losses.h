// include/augssl/losses.h

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

#ifndef AUGSSL_LOSSES_H_
#define AUGSSL_LOSSES_H_

#include <vector>

#include "augssl/matrix.h"

namespace augssl {

// Mean over all T*D elements of (pred - target)^2. grad, if non-null,
// receives d loss / d pred = 2 (pred - target) / (T*D).
double mse_loss(const Matrix &pred, const Matrix &target, Matrix *grad = nullptr);

// Row-wise numerically stable log softmax (max subtraction).
Matrix log_softmax_rows(const Matrix &logits);
std::vector<double> log_softmax(const std::vector<double> &x);

// Mean over rows of -log_probs[t, labels[t]], where log_probs are log
// softmax outputs. grad_logits, if non-null, receives the exact gradient wrt
// the logits the log probs came from: (exp(log_probs) - onehot(label)) / T.
double cross_entropy_from_log_probs(const Matrix &log_probs, const std::vector<int> &labels,
                                    Matrix *grad_logits = nullptr);

}  // namespace augssl

#endif  // AUGSSL_LOSSES_H_
