// src/stft.cc

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

#include "augssl/stft.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "augssl/fft.h"

namespace augssl {

void StftConfig::validate() const {
  if (window_length <= 0 || hop_length <= 0 || fft_size <= 0) {
    throw std::runtime_error("stft: frame parameters must be positive");
  }
  if (hop_length > window_length) {
    throw std::runtime_error("stft: hop length exceeds window length");
  }
  if (window_length > fft_size) {
    throw std::runtime_error("stft: window length exceeds fft size");
  }
  if (!is_power_of_two(fft_size)) {
    throw std::runtime_error("stft: fft size must be a power of two, got " +
                             std::to_string(fft_size));
  }
}

int num_stft_frames(size_t num_samples, const StftConfig &config) {
  config.validate();
  if (num_samples < static_cast<size_t>(config.window_length)) return 0;
  return 1 + static_cast<int>((num_samples - config.window_length) / config.hop_length);
}

std::vector<double> hann_window(int length) {
  if (length <= 0) throw std::runtime_error("hann_window: length must be positive");
  std::vector<double> w(length);
  const double step = 2.0 * M_PI / length;
  for (int i = 0; i < length; ++i) w[i] = 0.5 - 0.5 * std::cos(step * i);
  return w;
}

Matrix stft_magnitude(const AudioBuffer &buffer, const StftConfig &config) {
  const int num_frames = num_stft_frames(buffer.samples.size(), config);
  if (num_frames == 0) {
    throw std::runtime_error("stft: signal shorter than one analysis window");
  }
  const int num_bins = config.fft_size / 2 + 1;
  const std::vector<double> window = hann_window(config.window_length);

  Matrix mag(num_frames, num_bins);
  std::vector<std::complex<double>> frame(config.fft_size);
  for (int t = 0; t < num_frames; ++t) {
    const size_t start = static_cast<size_t>(t) * config.hop_length;
    for (int i = 0; i < config.window_length; ++i) {
      frame[i] = buffer.samples[start + i] * window[i];
    }
    std::fill(frame.begin() + config.window_length, frame.end(), std::complex<double>(0.0));
    fft_in_place(frame);
    double *out = mag.row(t);
    for (int k = 0; k < num_bins; ++k) out[k] = std::abs(frame[k]);
  }
  return mag;
}

}  // namespace augssl
