// src/wav.cc

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

#include "augssl/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "augssl/binio.h"

namespace augssl {

namespace {
constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;

float f32_from_bytes(const unsigned char *b) {
  uint32_t bits = static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
                  (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}
}  // namespace

AudioBuffer read_wav(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("wav: cannot open " + path);

  char tag[4];
  read_bytes(f, tag, 4, path + ": RIFF tag");
  if (std::memcmp(tag, "RIFF", 4) != 0) throw std::runtime_error("wav: not a RIFF file: " + path);
  read_u32_le(f);  // container size, unreliable in the wild; ignored
  read_bytes(f, tag, 4, path + ": WAVE tag");
  if (std::memcmp(tag, "WAVE", 4) != 0) throw std::runtime_error("wav: not a WAVE file: " + path);

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits_per_sample = 0;
  uint32_t sample_rate = 0;
  std::vector<unsigned char> data;
  bool have_data = false;

  while (f.peek() != EOF) {
    if (!f.read(tag, 4)) break;
    uint32_t chunk_size = read_u32_le(f);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw std::runtime_error("wav: malformed fmt chunk in " + path);
      format = read_u16_le(f);
      channels = read_u16_le(f);
      sample_rate = read_u32_le(f);
      read_u32_le(f);  // byte rate
      read_u16_le(f);  // block align
      bits_per_sample = read_u16_le(f);
      if (chunk_size > 16) f.seekg(chunk_size - 16, std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data.resize(chunk_size);
      if (chunk_size > 0) read_bytes(f, data.data(), chunk_size, path + ": data chunk");
      have_data = true;
    } else {
      f.seekg(chunk_size + (chunk_size & 1), std::ios::cur);  // chunks are word-aligned
    }
    if (!f) throw std::runtime_error("wav: truncated file: " + path);
  }

  if (!have_fmt) throw std::runtime_error("wav: missing fmt chunk in " + path);
  if (!have_data) throw std::runtime_error("wav: missing data chunk in " + path);
  if (channels != 1) {
    throw std::runtime_error("wav: unsupported channel count " + std::to_string(channels) +
                             " in " + path + " (mono required)");
  }
  if (sample_rate == 0) throw std::runtime_error("wav: zero sample rate in " + path);

  AudioBuffer out;
  out.sample_rate = static_cast<int>(sample_rate);
  if (format == kFormatPcm && bits_per_sample == 16) {
    size_t n = data.size() / 2;
    out.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      int16_t v = static_cast<int16_t>(data[2 * i] | (data[2 * i + 1] << 8));
      out.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatIeeeFloat && bits_per_sample == 32) {
    size_t n = data.size() / 4;
    out.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      double v = f32_from_bytes(&data[4 * i]);
      if (!std::isfinite(v)) throw std::runtime_error("wav: non-finite sample in " + path);
      out.samples[i] = std::clamp(v, -1.0, 1.0);
    }
  } else {
    throw std::runtime_error("wav: unsupported encoding (format " + std::to_string(format) +
                             ", " + std::to_string(bits_per_sample) + " bit) in " + path);
  }
  return out;
}

void write_wav(const AudioBuffer &buffer, const std::string &path) {
  if (buffer.sample_rate <= 0) throw std::runtime_error("wav: invalid sample rate");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("wav: cannot write " + path);

  const uint32_t num_samples = static_cast<uint32_t>(buffer.samples.size());
  const uint32_t data_bytes = num_samples * 2;
  const uint32_t sample_rate = static_cast<uint32_t>(buffer.sample_rate);

  write_bytes(f, "RIFF", 4);
  write_u32_le(f, 36 + data_bytes);
  write_bytes(f, "WAVE", 4);
  write_bytes(f, "fmt ", 4);
  write_u32_le(f, 16);
  write_u16_le(f, kFormatPcm);
  write_u16_le(f, 1);  // mono
  write_u32_le(f, sample_rate);
  write_u32_le(f, sample_rate * 2);  // byte rate
  write_u16_le(f, 2);                // block align
  write_u16_le(f, 16);               // bits per sample
  write_bytes(f, "data", 4);
  write_u32_le(f, data_bytes);

  for (double s : buffer.samples) {
    if (!std::isfinite(s)) throw std::runtime_error("wav: non-finite sample on write");
    double clipped = std::clamp(s, -1.0, 1.0);
    long q = std::lround(clipped * 32768.0);
    q = std::clamp(q, -32768L, 32767L);
    write_i16_le(f, static_cast<int16_t>(q));
  }
  if (!f) throw std::runtime_error("wav: write failed for " + path);
}

}  // namespace augssl
