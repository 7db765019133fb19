// src/audio_buffer.cc

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

#include "augssl/audio_buffer.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace augssl {

double signal_power(const AudioBuffer &buffer) {
  if (buffer.samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : buffer.samples) acc += s * s;
  return acc / static_cast<double>(buffer.samples.size());
}

double signal_rms(const AudioBuffer &buffer) { return std::sqrt(signal_power(buffer)); }

void validate_audio(const AudioBuffer &buffer) {
  if (buffer.sample_rate <= 0) throw std::runtime_error("audio: sample_rate must be positive");
  for (double s : buffer.samples) {
    if (!std::isfinite(s)) throw std::runtime_error("audio: non-finite sample");
    if (s < -1.0 || s > 1.0) throw std::runtime_error("audio: sample outside [-1, 1]");
  }
}

void clip_in_place(AudioBuffer &buffer) {
  for (double &s : buffer.samples) s = std::clamp(s, -1.0, 1.0);
}

}  // namespace augssl
