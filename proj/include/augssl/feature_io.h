// include/augssl/feature_io.h

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

#ifndef AUGSSL_FEATURE_IO_H_
#define AUGSSL_FEATURE_IO_H_

#include <string>

#include "augssl/mel.h"

namespace augssl {

// Binary feature files: little-endian, magic "AFEA", u32 version, u32 T,
// u32 D, f32 frame_rate, then T*D f32 values row-major. Values are stored in
// single precision; loading promotes back to double.
void save_features(const std::string &path, const FeatureSequence &features);
FeatureSequence load_features(const std::string &path);

}  // namespace augssl

#endif  // AUGSSL_FEATURE_IO_H_
