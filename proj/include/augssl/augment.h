// include/augssl/augment.h

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

#ifndef AUGSSL_AUGMENT_H_
#define AUGSSL_AUGMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "augssl/audio_buffer.h"
#include "augssl/manifest.h"

namespace augssl {

// Additive-noise parameters. SNR targets default to 5/10/15 dB; each
// augmented utterance draws one of them plus a noise file and a tiling
// offset.
struct NoiseAugSpec {
  Manifest noise_manifest;
  std::vector<double> snr_choices_db = {5.0, 10.0, 15.0};
  uint64_t seed = 0;

  void validate() const;
};

// Pitch-shift parameters: shifts drawn uniformly from
// [semitone_min, semitone_max] excluding the dead zone around 0.
struct PitchAugSpec {
  double semitone_min = -2.0;
  double semitone_max = 2.0;
  double dead_zone = 0.25;
  uint64_t seed = 0;

  void validate() const;
};

enum class AugStrategy { kNoise, kPitch, kNoisePitchMix, kCorpusMix };

std::string aug_strategy_name(AugStrategy strategy);
AugStrategy parse_aug_strategy(const std::string &name);  // throws on unknown name

// Augmentation ratios used by the experiment grid.
extern const std::vector<int> kAllowedAugRatios;  // {1, 2, 3, 6, 12, 16, 20}

// A recipe for expanding a base manifest into a pre-training manifest:
// the base plus `ratio` transformed copies (or, for corpus_mix, a
// duration-matched slice of another corpus).
struct AugmentationPlan {
  Manifest base;
  AugStrategy strategy = AugStrategy::kNoise;
  int ratio = 1;
  uint64_t seed = 0;
  std::optional<NoiseAugSpec> noise;  // required for noise and noise_pitch_mix
  std::optional<PitchAugSpec> pitch;  // required for pitch and noise_pitch_mix
  std::optional<Manifest> other;      // required for corpus_mix
  // noise_pitch_mix alternative: apply both effects to every utterance
  // instead of choosing one per utterance.
  bool stack_effects = false;

  void validate() const;
};

// output = clean + g * noise, with g chosen so the scaled noise sits exactly
// snr_db below the clean signal in full-utterance mean-square power. Noise
// shorter than clean is tiled (wrapped) starting at noise_offset. Output is
// clipped to [-1, 1].
AudioBuffer mix_noise(const AudioBuffer &clean, const AudioBuffer &noise, double snr_db,
                      size_t noise_offset = 0);

// Indices of the shortest manifest prefix whose summed duration best
// approximates target_s: entries are taken in order, and the entry that
// crosses the target is kept only if it brings the total closer. Throws if
// the best prefix misses the target by more than 1%, whether because the
// manifest is too short or its entries are too coarse.
std::vector<size_t> select_prefix_by_duration(const Manifest &manifest, double target_s);

// Expands the plan, materializing transformed audio as WAVs under
// out_dir/wav and writing out_dir/manifest.jsonl. Augmented entries reference
// the label files of their source utterances (all transforms preserve the
// frame grid). Deterministic in (plan, seed); utterances may be processed in
// parallel.
Manifest expand_plan(const AugmentationPlan &plan, const std::string &out_dir,
                     int num_threads = 1);

}  // namespace augssl

#endif  // AUGSSL_AUGMENT_H_
