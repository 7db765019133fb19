// src/synth_corpus.cc

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

#include "augssl/synth_corpus.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "augssl/rng.h"
#include "augssl/wav.h"

namespace augssl {

namespace {

constexpr double kBandLowHz = 200.0;
constexpr double kBandHighHz = 3500.0;
constexpr double kSegmentMinMs = 100.0;
constexpr double kSegmentMaxMs = 400.0;
const double kToneAmplitudes[3] = {0.30, 0.25, 0.20};
constexpr double kNoiseStddev = 0.02;

std::string hex16(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void SynthCorpusSpec::validate() const {
  if (num_utterances <= 0) throw std::runtime_error("synth corpus: num_utterances must be positive");
  if (utterance_duration_s <= 0.0) {
    throw std::runtime_error("synth corpus: utterance_duration_s must be positive");
  }
  if (num_phoneme_classes <= 0) {
    throw std::runtime_error("synth corpus: num_phoneme_classes must be positive");
  }
  if (num_phoneme_classes > kMaxSynthClasses) {
    throw std::runtime_error("synth corpus: at most " + std::to_string(kMaxSynthClasses) +
                             " classes keep the 150 Hz inter-class separation");
  }
  if (sample_rate <= 0) throw std::runtime_error("synth corpus: sample_rate must be positive");
}

std::array<double, 3> synth_class_frequencies(int class_index, int num_classes) {
  if (class_index < 0 || class_index >= num_classes) {
    throw std::runtime_error("synth corpus: class index out of range");
  }
  const double spacing = (kBandHighHz - kBandLowHz) / num_classes;
  const double base = kBandLowHz + class_index * spacing;
  return {base, base + spacing / 3.0, base + 2.0 * spacing / 3.0};
}

AudioBuffer synth_utterance(const SynthCorpusSpec &spec, int utterance_index,
                            std::vector<int> *class_per_sample) {
  spec.validate();
  Rng rng(seed_combine(spec.seed, static_cast<uint64_t>(utterance_index)));

  const size_t num_samples =
      static_cast<size_t>(std::llround(spec.utterance_duration_s * spec.sample_rate));
  AudioBuffer buffer;
  buffer.sample_rate = spec.sample_rate;
  buffer.samples.resize(num_samples, 0.0);
  if (class_per_sample) class_per_sample->assign(num_samples, 0);

  size_t pos = 0;
  while (pos < num_samples) {
    const double len_ms = rng.uniform(kSegmentMinMs, kSegmentMaxMs);
    size_t len = static_cast<size_t>(std::llround(len_ms / 1000.0 * spec.sample_rate));
    if (len == 0) len = 1;
    if (pos + len > num_samples) len = num_samples - pos;

    const int cls = static_cast<int>(rng.uniform_index(spec.num_phoneme_classes));
    const std::array<double, 3> freqs = synth_class_frequencies(cls, spec.num_phoneme_classes);
    double phases[3];
    for (int i = 0; i < 3; ++i) phases[i] = rng.uniform(0.0, 2.0 * M_PI);

    for (size_t n = 0; n < len; ++n) {
      const double t = static_cast<double>(pos + n) / spec.sample_rate;
      double v = 0.0;
      for (int i = 0; i < 3; ++i) {
        v += kToneAmplitudes[i] * std::sin(2.0 * M_PI * freqs[i] * t + phases[i]);
      }
      buffer.samples[pos + n] = v;
      if (class_per_sample) (*class_per_sample)[pos + n] = cls;
    }
    pos += len;
  }

  for (double &s : buffer.samples) s += rng.normal(0.0, kNoiseStddev);
  clip_in_place(buffer);
  return buffer;
}

Manifest generate_synth_corpus(const SynthCorpusSpec &spec, const StftConfig &stft_config,
                               const std::string &out_dir) {
  spec.validate();
  stft_config.validate();
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "wav");
  fs::create_directories(fs::path(out_dir) / "labels");

  Manifest manifest;
  manifest.base_dir = out_dir;
  const uint64_t id_space = seed_combine(spec.seed, "synth-utterance-ids");

  for (int u = 0; u < spec.num_utterances; ++u) {
    std::vector<int> class_per_sample;
    const AudioBuffer buffer = synth_utterance(spec, u, &class_per_sample);

    char index_part[16];
    std::snprintf(index_part, sizeof(index_part), "%04d", u);
    const std::string id = "synth_" + std::string(index_part) + "_" +
                           hex16(seed_combine(id_space, static_cast<uint64_t>(u)));

    const std::string wav_rel = "wav/" + id + ".wav";
    const std::string labels_rel = "labels/" + id + ".json";
    write_wav(buffer, (fs::path(out_dir) / wav_rel).string());

    FrameLabels labels;
    labels.num_classes = spec.num_phoneme_classes;
    const int num_frames = num_stft_frames(buffer.samples.size(), stft_config);
    labels.labels.resize(num_frames);
    for (int t = 0; t < num_frames; ++t) {
      const size_t center = static_cast<size_t>(t) * stft_config.hop_length +
                            stft_config.window_length / 2;
      labels.labels[t] = class_per_sample[center];
    }
    save_frame_labels(labels, (fs::path(out_dir) / labels_rel).string());

    ManifestEntry entry;
    entry.id = id;
    entry.audio_path = wav_rel;
    entry.duration_s = static_cast<double>(buffer.samples.size()) / spec.sample_rate;
    entry.labels_path = labels_rel;
    entry.source_tag = SourceTag::kClean;
    manifest.entries.push_back(std::move(entry));
  }

  save_manifest(manifest, (fs::path(out_dir) / "manifest.jsonl").string());
  return manifest;
}

}  // namespace augssl
