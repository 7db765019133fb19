// include/augssl/checkpoint.h

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

#ifndef AUGSSL_CHECKPOINT_H_
#define AUGSSL_CHECKPOINT_H_

#include <string>
#include <utility>
#include <vector>

#include "augssl/matrix.h"

namespace augssl {

// A named view over model parameters, used for checkpoints and optimizers.
// Order is significant: it fixes the on-disk layout and the optimizer slot
// assignment.
struct NamedParam {
  std::string name;
  Matrix *matrix;
};
using ParamRegistry = std::vector<NamedParam>;

std::vector<Matrix *> registry_matrices(const ParamRegistry &registry);

// Checkpoint files: little-endian, magic "ACKP", u32 version, u32 byte
// length + UTF-8 of the training-config echo, u32 parameter count, then per
// parameter u32 name length, name bytes, u32 rows, u32 cols, rows*cols f32
// values row-major.
struct Checkpoint {
  std::string config_json;
  std::vector<std::pair<std::string, Matrix>> params;  // file order

  const Matrix &find(const std::string &name) const;  // throws if absent
};

void save_checkpoint(const std::string &path, const ParamRegistry &registry,
                     const std::string &config_json);
void save_checkpoint(const std::string &path, const Checkpoint &checkpoint);
Checkpoint load_checkpoint(const std::string &path);

// Copies checkpoint values into the registry's matrices; names and shapes
// must match exactly.
void load_into_registry(const Checkpoint &checkpoint, const ParamRegistry &registry);

}  // namespace augssl

#endif  // AUGSSL_CHECKPOINT_H_
