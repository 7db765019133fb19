// include/augssl/mel.h

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

#ifndef AUGSSL_MEL_H_
#define AUGSSL_MEL_H_

#include <vector>

#include "augssl/audio_buffer.h"
#include "augssl/matrix.h"
#include "augssl/stft.h"

namespace augssl {

// Mel filterbank parameters. f_max of 0 means the Nyquist frequency of
// whatever sample rate the filterbank is built for.
struct MelConfig {
  int num_mels = 80;
  double f_min = 0.0;
  double f_max = 0.0;
  double log_floor = 1e-10;

  double resolved_f_max(int sample_rate) const;
  void validate(int sample_rate) const;
};

// T x D log mel features plus the frame rate they were computed at.
struct FeatureSequence {
  Matrix frames;
  double frame_rate = 0.0;

  int num_frames() const { return frames.rows(); }
  int dim() const { return frames.cols(); }
};

// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Center (peak) frequency in Hz of each triangular filter, strictly
// increasing across filters.
std::vector<double> mel_center_frequencies(const MelConfig &mel_config, int sample_rate);

// num_mels x (fft_size/2 + 1) matrix of triangular filters with centers
// equally spaced on the mel scale. Rows are nonnegative and unnormalized.
// Throws if any filter is too narrow to cover a single fft bin.
Matrix mel_filterbank(const MelConfig &mel_config, const StftConfig &stft_config,
                      int sample_rate);

// Log mel power features: log(filterbank . magnitude^2 + log_floor).
FeatureSequence log_mel(const AudioBuffer &buffer, const StftConfig &stft_config,
                        const MelConfig &mel_config);

// Per-utterance standardization: each feature dimension is shifted and scaled
// to zero mean, unit variance across the frames of this sequence.
void standardize_in_place(FeatureSequence &features);

}  // namespace augssl

#endif  // AUGSSL_MEL_H_
