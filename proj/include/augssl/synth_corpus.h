// include/augssl/synth_corpus.h

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

#ifndef AUGSSL_SYNTH_CORPUS_H_
#define AUGSSL_SYNTH_CORPUS_H_

#include <array>
#include <cstdint>
#include <string>

#include "augssl/audio_buffer.h"
#include "augssl/manifest.h"
#include "augssl/stft.h"

namespace augssl {

// Class frequency triples are spread over 200-3500 Hz with at least 150 Hz
// between the bands of adjacent classes, which caps the class count.
constexpr int kMaxSynthClasses = 7;

// Parameters for the deterministic synthetic phoneme corpus. The seed fully
// determines every emitted byte.
struct SynthCorpusSpec {
  int num_utterances = 50;
  double utterance_duration_s = 2.0;
  int num_phoneme_classes = 5;
  int sample_rate = kCanonicalSampleRate;
  uint64_t seed = 0;

  void validate() const;
};

// The fixed formant-like frequency triple of one phoneme class.
std::array<double, 3> synth_class_frequencies(int class_index, int num_classes);

// One utterance: a concatenation of random-length segments, each a mixture of
// the three sinusoids of one class plus low-level noise. If frame_classes is
// non-null it receives one class index per sample.
AudioBuffer synth_utterance(const SynthCorpusSpec &spec, int utterance_index,
                            std::vector<int> *class_per_sample);

// Writes wav/, labels/ and manifest.jsonl under out_dir and returns the
// manifest. Frame labels are sampled at the center of each analysis frame of
// stft_config, so label counts match the dsp frame grid.
Manifest generate_synth_corpus(const SynthCorpusSpec &spec, const StftConfig &stft_config,
                               const std::string &out_dir);

}  // namespace augssl

#endif  // AUGSSL_SYNTH_CORPUS_H_
