// include/augssl/version.h

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

#ifndef AUGSSL_VERSION_H_
#define AUGSSL_VERSION_H_

#include <cstdint>

namespace augssl {

inline constexpr const char *kToolkitVersion = "1.0.0";

// On-disk format versions. Bump when the binary layout changes.
inline constexpr uint32_t kFeatureFileVersion = 1;   // "AFEA" feature files
inline constexpr uint32_t kCheckpointVersion = 1;    // "ACKP" checkpoints

}  // namespace augssl

#endif  // AUGSSL_VERSION_H_
