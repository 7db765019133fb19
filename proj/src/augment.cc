// src/augment.cc

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

#include "augssl/augment.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <unordered_set>

#include "augssl/pitch_shift.h"
#include "augssl/rng.h"
#include "augssl/thread_pool.h"
#include "augssl/wav.h"

namespace augssl {

const std::vector<int> kAllowedAugRatios = {1, 2, 3, 6, 12, 16, 20};

void NoiseAugSpec::validate() const {
  if (noise_manifest.empty()) throw std::runtime_error("noise aug: empty noise manifest");
  if (snr_choices_db.empty()) throw std::runtime_error("noise aug: no SNR choices");
  for (double snr : snr_choices_db) {
    if (!std::isfinite(snr)) throw std::runtime_error("noise aug: non-finite SNR choice");
  }
}

void PitchAugSpec::validate() const {
  if (!std::isfinite(semitone_min) || !std::isfinite(semitone_max)) {
    throw std::runtime_error("pitch aug: non-finite semitone range");
  }
  if (semitone_min >= semitone_max) {
    throw std::runtime_error("pitch aug: degenerate semitone range");
  }
  if (semitone_min < -12.0 || semitone_max > 12.0) {
    throw std::runtime_error("pitch aug: semitone range exceeds one octave");
  }
  if (dead_zone < 0.0) throw std::runtime_error("pitch aug: negative dead zone");
  if (semitone_max <= dead_zone && semitone_min >= -dead_zone) {
    throw std::runtime_error("pitch aug: dead zone swallows the whole range");
  }
}

std::string aug_strategy_name(AugStrategy strategy) {
  switch (strategy) {
    case AugStrategy::kNoise: return "noise";
    case AugStrategy::kPitch: return "pitch";
    case AugStrategy::kNoisePitchMix: return "noise_pitch_mix";
    case AugStrategy::kCorpusMix: return "corpus_mix";
  }
  throw std::runtime_error("aug strategy: bad enum value");
}

AugStrategy parse_aug_strategy(const std::string &name) {
  if (name == "noise") return AugStrategy::kNoise;
  if (name == "pitch") return AugStrategy::kPitch;
  if (name == "noise_pitch_mix" || name == "mix") return AugStrategy::kNoisePitchMix;
  if (name == "corpus_mix" || name == "corpus") return AugStrategy::kCorpusMix;
  throw std::runtime_error("aug strategy: unknown name: " + name);
}

void AugmentationPlan::validate() const {
  if (base.empty()) throw std::runtime_error("augmentation plan: empty base manifest");
  if (std::find(kAllowedAugRatios.begin(), kAllowedAugRatios.end(), ratio) ==
      kAllowedAugRatios.end()) {
    throw std::runtime_error("augmentation plan: ratio " + std::to_string(ratio) +
                             " not one of the supported grid ratios");
  }
  const bool needs_noise =
      strategy == AugStrategy::kNoise || strategy == AugStrategy::kNoisePitchMix;
  const bool needs_pitch =
      strategy == AugStrategy::kPitch || strategy == AugStrategy::kNoisePitchMix;
  if (needs_noise) {
    if (!noise) throw std::runtime_error("augmentation plan: missing noise spec");
    noise->validate();
  }
  if (needs_pitch) {
    if (!pitch) throw std::runtime_error("augmentation plan: missing pitch spec");
    pitch->validate();
  }
  if (strategy == AugStrategy::kCorpusMix && (!other || other->empty())) {
    throw std::runtime_error("augmentation plan: corpus_mix needs a non-empty other manifest");
  }
}

AudioBuffer mix_noise(const AudioBuffer &clean, const AudioBuffer &noise, double snr_db,
                      size_t noise_offset) {
  if (clean.sample_rate != noise.sample_rate) {
    throw std::runtime_error("mix_noise: sample rate mismatch");
  }
  if (noise.samples.empty()) throw std::runtime_error("mix_noise: empty noise signal");
  const double p_clean = signal_power(clean);
  if (p_clean <= 0.0) throw std::runtime_error("mix_noise: silent clean signal");

  std::vector<double> tiled(clean.samples.size());
  for (size_t i = 0; i < tiled.size(); ++i) {
    tiled[i] = noise.samples[(noise_offset + i) % noise.samples.size()];
  }
  double p_tiled = 0.0;
  for (double v : tiled) p_tiled += v * v;
  p_tiled /= tiled.size();
  if (p_tiled <= 0.0) throw std::runtime_error("mix_noise: silent noise signal");

  const double gain = std::sqrt(p_clean / (p_tiled * std::pow(10.0, snr_db / 10.0)));
  AudioBuffer out;
  out.sample_rate = clean.sample_rate;
  out.samples.resize(clean.samples.size());
  for (size_t i = 0; i < tiled.size(); ++i) {
    out.samples[i] = clean.samples[i] + gain * tiled[i];
  }
  clip_in_place(out);
  return out;
}

std::vector<size_t> select_prefix_by_duration(const Manifest &manifest, double target_s) {
  if (target_s <= 0.0) throw std::runtime_error("duration selection: target must be positive");
  std::vector<size_t> picked;
  double cum = 0.0;
  for (size_t i = 0; i < manifest.entries.size(); ++i) {
    const double next = cum + manifest.entries[i].duration_s;
    if (next < target_s) {
      picked.push_back(i);
      cum = next;
      continue;
    }
    if (std::fabs(next - target_s) < std::fabs(cum - target_s)) {
      picked.push_back(i);
      cum = next;
    }
    break;
  }
  if (std::fabs(cum - target_s) > 0.01 * target_s) {
    throw std::runtime_error("duration selection: manifest cannot reach " +
                             std::to_string(target_s) + " s within 1% (got " +
                             std::to_string(cum) + " s)");
  }
  return picked;
}

namespace {

std::string absolute_path(const std::string &path) {
  return std::filesystem::absolute(path).lexically_normal().string();
}

// Base entries keep their tag but get paths resolved to absolute, so the
// output manifest is self-contained regardless of where it is written.
ManifestEntry rebased_entry(const Manifest &manifest, const ManifestEntry &entry) {
  ManifestEntry out = entry;
  out.audio_path = absolute_path(manifest.resolve_audio_path(entry));
  if (entry.labels_path) {
    out.labels_path = absolute_path(*manifest.resolve_labels_path(entry));
  }
  return out;
}

double draw_pitch_shift(Rng &rng, const PitchAugSpec &spec) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double s = rng.uniform(spec.semitone_min, spec.semitone_max);
    if (std::fabs(s) >= spec.dead_zone) return s;
  }
  throw std::runtime_error("pitch aug: dead-zone rejection failed to terminate");
}

}  // namespace

Manifest expand_plan(const AugmentationPlan &plan, const std::string &out_dir,
                     int num_threads) {
  plan.validate();
  namespace fs = std::filesystem;

  Manifest out;
  out.base_dir = out_dir;
  for (const ManifestEntry &entry : plan.base.entries) {
    out.entries.push_back(rebased_entry(plan.base, entry));
  }

  if (plan.strategy == AugStrategy::kCorpusMix) {
    fs::create_directories(out_dir);
    const double target_s = static_cast<double>(plan.ratio) * plan.base.total_duration_s();
    const std::vector<size_t> picked = select_prefix_by_duration(*plan.other, target_s);
    for (size_t idx : picked) {
      ManifestEntry entry = rebased_entry(*plan.other, plan.other->entries[idx]);
      entry.id += "_mix";
      entry.source_tag = SourceTag::kMixedCorpus;
      out.entries.push_back(std::move(entry));
    }
  } else {
    fs::create_directories(fs::path(out_dir) / "wav");
    const size_t per_copy = plan.base.size();
    const size_t num_jobs = static_cast<size_t>(plan.ratio) * per_copy;
    std::vector<ManifestEntry> slots(num_jobs);

    const uint64_t noise_root =
        plan.noise ? seed_combine(seed_combine(plan.seed, "noise"), plan.noise->seed) : 0;
    const uint64_t pitch_root =
        plan.pitch ? seed_combine(seed_combine(plan.seed, "pitch"), plan.pitch->seed) : 0;
    const uint64_t choice_root = seed_combine(plan.seed, "mix-choice");

    parallel_for(num_jobs, num_threads, [&](size_t job) {
      const int copy = 1 + static_cast<int>(job / per_copy);
      const size_t idx = job % per_copy;
      const ManifestEntry &src = plan.base.entries[idx];
      const AudioBuffer clean = read_wav(plan.base.resolve_audio_path(src));

      bool apply_noise = plan.strategy == AugStrategy::kNoise;
      bool apply_pitch = plan.strategy == AugStrategy::kPitch;
      if (plan.strategy == AugStrategy::kNoisePitchMix) {
        if (plan.stack_effects) {
          apply_noise = apply_pitch = true;
        } else {
          Rng choice(seed_combine(seed_combine(choice_root, static_cast<uint64_t>(copy)), idx));
          apply_noise = choice.coin();
          apply_pitch = !apply_noise;
        }
      }

      AudioBuffer aug = clean;
      std::string tag_word;
      SourceTag tag = SourceTag::kClean;
      if (apply_pitch) {
        Rng rng(seed_combine(seed_combine(pitch_root, static_cast<uint64_t>(copy)), idx));
        aug = pitch_shift(aug, draw_pitch_shift(rng, *plan.pitch));
        tag_word = "pitch";
        tag = SourceTag::kPitchAug;
      }
      if (apply_noise) {
        Rng rng(seed_combine(seed_combine(noise_root, static_cast<uint64_t>(copy)), idx));
        const Manifest &nm = plan.noise->noise_manifest;
        const ManifestEntry &noise_entry = nm.entries[rng.uniform_index(nm.size())];
        const double snr =
            plan.noise->snr_choices_db[rng.uniform_index(plan.noise->snr_choices_db.size())];
        const AudioBuffer noise = read_wav(nm.resolve_audio_path(noise_entry));
        const size_t offset = rng.uniform_index(noise.samples.size());
        aug = mix_noise(aug, noise, snr, offset);
        tag_word = apply_pitch ? "noisepitch" : "noise";
        tag = SourceTag::kNoiseAug;
      }

      ManifestEntry entry;
      entry.id = src.id + "_" + tag_word + "_c" + std::to_string(copy);
      const std::string wav_rel = "wav/" + entry.id + ".wav";
      write_wav(aug, (fs::path(out_dir) / wav_rel).string());
      entry.audio_path = wav_rel;
      entry.duration_s = src.duration_s;
      if (src.labels_path) {
        entry.labels_path = absolute_path(*plan.base.resolve_labels_path(src));
      }
      entry.source_tag = tag;
      slots[job] = std::move(entry);
    });

    for (ManifestEntry &entry : slots) out.entries.push_back(std::move(entry));
  }

  std::unordered_set<std::string> ids;
  for (const ManifestEntry &entry : out.entries) {
    if (!ids.insert(entry.id).second) {
      throw std::runtime_error("expand_plan: duplicate id in output: " + entry.id);
    }
  }
  save_manifest(out, (fs::path(out_dir) / "manifest.jsonl").string());
  return out;
}

}  // namespace augssl
