// src/pitch_shift.cc

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

#include "augssl/pitch_shift.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "augssl/fft.h"
#include "augssl/stft.h"

namespace augssl {

namespace {

// Wrap to (-pi, pi].
double princarg(double phase) {
  return phase - 2.0 * M_PI * std::round(phase / (2.0 * M_PI));
}

// Time-stretches the signal by `alpha` with a phase vocoder: synthesis frames
// are laid down every kPitchHop samples, each taken from the analysis
// position round(j*hop/alpha) with per-bin phase advanced by the estimated
// instantaneous frequency. Returns the overlap-added signal normalized by the
// accumulated squared window.
std::vector<double> time_stretch(const std::vector<double> &input, double alpha) {
  const int win = kPitchWindow;
  const int hop = kPitchHop;
  const int num_bins = win / 2 + 1;
  const size_t n = input.size();
  const std::vector<double> window = hann_window(win);

  const long max_analysis = static_cast<long>(n) - win;
  const long num_frames = static_cast<long>(std::floor(alpha * max_analysis / hop)) + 1;

  std::vector<double> out(static_cast<size_t>(num_frames - 1) * hop + win, 0.0);
  std::vector<double> weight(out.size(), 0.0);
  std::vector<double> prev_phase(num_bins, 0.0);
  std::vector<double> synth_phase(num_bins, 0.0);
  std::vector<std::complex<double>> frame(win);
  long prev_pos = 0;

  for (long j = 0; j < num_frames; ++j) {
    long pos = std::lround(j * hop / alpha);
    pos = std::clamp(pos, 0L, max_analysis);

    for (int i = 0; i < win; ++i) frame[i] = input[pos + i] * window[i];
    fft_in_place(frame);

    for (int k = 0; k < num_bins; ++k) {
      const double mag = std::abs(frame[k]);
      const double phase = std::arg(frame[k]);
      const double bin_freq = 2.0 * M_PI * k / win;
      double inst_freq = bin_freq;
      if (j > 0) {
        const long delta = pos - prev_pos;
        if (delta > 0) {
          inst_freq = bin_freq + princarg(phase - prev_phase[k] - bin_freq * delta) / delta;
        }
        synth_phase[k] += hop * inst_freq;
      } else {
        synth_phase[k] = phase;
      }
      prev_phase[k] = phase;
      frame[k] = std::polar(mag, synth_phase[k]);
    }
    for (int k = num_bins; k < win; ++k) frame[k] = std::conj(frame[win - k]);
    fft_in_place(frame, true);

    const size_t base = static_cast<size_t>(j) * hop;
    for (int i = 0; i < win; ++i) {
      out[base + i] += frame[i].real() * window[i];
      weight[base + i] += window[i] * window[i];
    }
    prev_pos = pos;
  }

  for (size_t i = 0; i < out.size(); ++i) out[i] /= std::max(weight[i], 1e-6);
  return out;
}

}  // namespace

AudioBuffer pitch_shift(const AudioBuffer &buffer, double semitones) {
  if (std::fabs(semitones) > 12.0) {
    throw std::runtime_error("pitch_shift: shift exceeds 12 semitones");
  }
  if (buffer.samples.size() < static_cast<size_t>(4 * kPitchWindow)) {
    throw std::runtime_error("pitch_shift: buffer shorter than four analysis windows");
  }
  validate_audio(buffer);

  const double ratio = std::pow(2.0, semitones / 12.0);
  const std::vector<double> stretched = time_stretch(buffer.samples, ratio);

  AudioBuffer out;
  out.sample_rate = buffer.sample_rate;
  out.samples.resize(buffer.samples.size());
  const double max_x = static_cast<double>(stretched.size()) - 2.0;
  for (size_t i = 0; i < out.samples.size(); ++i) {
    const double x = std::min(i * ratio, max_x);
    const size_t x0 = static_cast<size_t>(x);
    const double frac = x - x0;
    out.samples[i] = (1.0 - frac) * stretched[x0] + frac * stretched[x0 + 1];
  }
  clip_in_place(out);
  return out;
}

}  // namespace augssl
