// include/augssl/stft.h

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

#ifndef AUGSSL_STFT_H_
#define AUGSSL_STFT_H_

#include <vector>

#include "augssl/audio_buffer.h"
#include "augssl/matrix.h"

namespace augssl {

// Analysis frame parameters. Defaults are 25 ms windows with 10 ms hop at
// 16 kHz. Frames are taken without padding: T = 1 + floor((N - win) / hop).
struct StftConfig {
  int window_length = 400;
  int hop_length = 160;
  int fft_size = 512;

  void validate() const;  // hop <= win <= fft, fft a power of two
};

// Number of analysis frames for a signal of num_samples, or 0 if the signal
// is shorter than one window.
int num_stft_frames(size_t num_samples, const StftConfig &config);

// Periodic Hann window of the given length.
std::vector<double> hann_window(int length);

// Magnitude spectrogram, T x (fft_size/2 + 1). Each row is the magnitude of
// the FFT of one Hann-windowed, zero-padded frame. Throws if the buffer is
// shorter than one window.
Matrix stft_magnitude(const AudioBuffer &buffer, const StftConfig &config);

}  // namespace augssl

#endif  // AUGSSL_STFT_H_
