// include/augssl/audio_buffer.h

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

#ifndef AUGSSL_AUDIO_BUFFER_H_
#define AUGSSL_AUDIO_BUFFER_H_

#include <vector>

namespace augssl {

// The canonical sample rate. Other rates are accepted by the WAV reader but
// operations that mix buffers require matching rates; no resampling.
inline constexpr int kCanonicalSampleRate = 16000;

// Mono PCM audio. Samples are finite and within [-1, 1]; producers clip
// with saturation.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = kCanonicalSampleRate;

  size_t num_samples() const { return samples.size(); }
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// Mean square of the samples.
double signal_power(const AudioBuffer &buffer);

// Root mean square.
double signal_rms(const AudioBuffer &buffer);

// Throws if samples are non-finite, out of [-1, 1], or the rate is invalid.
void validate_audio(const AudioBuffer &buffer);

// Saturating clip to [-1, 1], in place.
void clip_in_place(AudioBuffer &buffer);

}  // namespace augssl

#endif  // AUGSSL_AUDIO_BUFFER_H_
