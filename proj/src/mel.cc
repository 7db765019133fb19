// src/mel.cc

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

#include "augssl/mel.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace augssl {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

double MelConfig::resolved_f_max(int sample_rate) const {
  return f_max > 0.0 ? f_max : sample_rate / 2.0;
}

void MelConfig::validate(int sample_rate) const {
  if (num_mels < 1) throw std::runtime_error("mel: num_mels must be at least 1");
  if (log_floor <= 0.0) throw std::runtime_error("mel: log_floor must be positive");
  const double fmax = resolved_f_max(sample_rate);
  if (f_min < 0.0 || f_min >= fmax) {
    throw std::runtime_error("mel: need 0 <= f_min < f_max");
  }
  if (fmax > sample_rate / 2.0) {
    throw std::runtime_error("mel: f_max exceeds the Nyquist frequency");
  }
}

// num_mels + 2 boundary frequencies in Hz, equally spaced on the mel scale.
static std::vector<double> mel_boundaries(const MelConfig &mel_config, int sample_rate) {
  const double mel_lo = hz_to_mel(mel_config.f_min);
  const double mel_hi = hz_to_mel(mel_config.resolved_f_max(sample_rate));
  const int num_points = mel_config.num_mels + 2;
  std::vector<double> hz(num_points);
  for (int i = 0; i < num_points; ++i) {
    const double mel = mel_lo + (mel_hi - mel_lo) * i / (num_points - 1);
    hz[i] = mel_to_hz(mel);
  }
  return hz;
}

std::vector<double> mel_center_frequencies(const MelConfig &mel_config, int sample_rate) {
  mel_config.validate(sample_rate);
  const std::vector<double> hz = mel_boundaries(mel_config, sample_rate);
  return std::vector<double>(hz.begin() + 1, hz.end() - 1);
}

Matrix mel_filterbank(const MelConfig &mel_config, const StftConfig &stft_config,
                      int sample_rate) {
  mel_config.validate(sample_rate);
  stft_config.validate();
  const std::vector<double> hz = mel_boundaries(mel_config, sample_rate);
  const int num_bins = stft_config.fft_size / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate) / stft_config.fft_size;

  Matrix fbank(mel_config.num_mels, num_bins);
  for (int m = 0; m < mel_config.num_mels; ++m) {
    const double left = hz[m], center = hz[m + 1], right = hz[m + 2];
    double *row = fbank.row(m);
    bool any_positive = false;
    for (int k = 0; k < num_bins; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f > left && f < center) {
        w = (f - left) / (center - left);
      } else if (f == center) {
        w = 1.0;
      } else if (f > center && f < right) {
        w = (right - f) / (right - center);
      }
      row[k] = w;
      if (w > 0.0) any_positive = true;
    }
    if (!any_positive) {
      throw std::runtime_error("mel: filter " + std::to_string(m) +
                               " covers no fft bin; reduce num_mels or raise fft_size");
    }
  }
  return fbank;
}

FeatureSequence log_mel(const AudioBuffer &buffer, const StftConfig &stft_config,
                        const MelConfig &mel_config) {
  Matrix mag = stft_magnitude(buffer, stft_config);
  for (double &v : mag.data()) v *= v;
  const Matrix fbank = mel_filterbank(mel_config, stft_config, buffer.sample_rate);

  FeatureSequence features;
  features.frames = matmul_nt(mag, fbank);
  for (double &v : features.frames.data()) v = std::log(v + mel_config.log_floor);
  features.frame_rate = static_cast<double>(buffer.sample_rate) / stft_config.hop_length;
  check_finite(features.frames, "log_mel");
  return features;
}

void standardize_in_place(FeatureSequence &features) {
  Matrix &frames = features.frames;
  const int t_len = frames.rows();
  if (t_len == 0) return;
  for (int d = 0; d < frames.cols(); ++d) {
    double mean = 0.0;
    for (int t = 0; t < t_len; ++t) mean += frames(t, d);
    mean /= t_len;
    double var = 0.0;
    for (int t = 0; t < t_len; ++t) {
      const double c = frames(t, d) - mean;
      var += c * c;
    }
    var /= t_len;
    const double inv_std = 1.0 / std::sqrt(var + 1e-8);
    for (int t = 0; t < t_len; ++t) frames(t, d) = (frames(t, d) - mean) * inv_std;
  }
}

}  // namespace augssl
