// tests/test_audio_io.cc

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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "augssl/manifest.h"
#include "augssl/rng.h"
#include "augssl/stft.h"
#include "augssl/synth_corpus.h"
#include "augssl/wav.h"
#include "test_util.h"

using namespace augssl;
namespace fs = std::filesystem;

TEST_CASE("wav round-trip is within one quantization step") {
  const fs::path dir = testutil::fresh_dir("wav_roundtrip");
  Rng rng(3);
  AudioBuffer buffer;
  buffer.samples.resize(4321);
  for (double &s : buffer.samples) s = rng.uniform(-0.99, 0.99);
  const std::string path = (dir / "x.wav").string();
  write_wav(buffer, path);
  const AudioBuffer back = read_wav(path);
  CHECK(back.sample_rate == buffer.sample_rate);
  REQUIRE(back.samples.size() == buffer.samples.size());
  const double step = 1.0 / 32768.0;
  for (size_t i = 0; i < buffer.samples.size(); ++i)
    CHECK(std::abs(back.samples[i] - buffer.samples[i]) <= step);
  fs::remove_all(dir);
}

TEST_CASE("wav write is deterministic") {
  const fs::path dir = testutil::fresh_dir("wav_determinism");
  const AudioBuffer tone = testutil::make_sine(250.0, 0.25);
  write_wav(tone, (dir / "a.wav").string());
  write_wav(tone, (dir / "b.wav").string());
  CHECK(testutil::read_file_bytes((dir / "a.wav").string()) ==
        testutil::read_file_bytes((dir / "b.wav").string()));
  fs::remove_all(dir);
}

TEST_CASE("wav reader rejects malformed input") {
  const fs::path dir = testutil::fresh_dir("wav_malformed");
  const std::string path = (dir / "junk.wav").string();
  {
    std::vector<double> noise(100, 0.0);
    AudioBuffer buffer;
    buffer.samples = noise;
    write_wav(buffer, path);
  }
  // Truncate the payload behind the header.
  fs::resize_file(path, 50);
  CHECK_THROWS(read_wav(path));
  CHECK_THROWS(read_wav((dir / "missing.wav").string()));
  fs::remove_all(dir);
}

TEST_CASE("manifest save/load/save is byte-identical") {
  const fs::path dir = testutil::fresh_dir("manifest_roundtrip");
  Manifest manifest;
  manifest.entries.push_back({"utt_a", "wav/a.wav", 2.0, std::string("labels/a.txt"),
                              SourceTag::kClean});
  manifest.entries.push_back({"utt_b", "wav/b.wav", 1.25, std::nullopt, SourceTag::kNoiseAug});
  manifest.entries.push_back({"utt_c", "wav/c.wav", 0.5, std::nullopt, SourceTag::kPitchAug});
  const std::string p1 = (dir / "m1.jsonl").string();
  const std::string p2 = (dir / "m2.jsonl").string();
  save_manifest(manifest, p1);
  const Manifest loaded = load_manifest(p1);
  CHECK(loaded.size() == 3);
  CHECK(loaded.entries[0].id == "utt_a");
  CHECK(loaded.entries[0].labels_path.has_value());
  CHECK(!loaded.entries[1].labels_path.has_value());
  CHECK(loaded.entries[1].source_tag == SourceTag::kNoiseAug);
  CHECK(loaded.total_duration_s() == doctest::Approx(3.75));
  save_manifest(loaded, p2);
  CHECK(testutil::read_file_bytes(p1) == testutil::read_file_bytes(p2));
  fs::remove_all(dir);
}

TEST_CASE("manifest loader reports the bad line and duplicate ids") {
  const fs::path dir = testutil::fresh_dir("manifest_errors");
  const std::string path = (dir / "bad.jsonl").string();
  {
    Manifest manifest;
    manifest.entries.push_back({"dup", "a.wav", 1.0, std::nullopt, SourceTag::kClean});
    save_manifest(manifest, path);
    std::ofstream out(path, std::ios::app);
    out << "{\"id\": \"dup\", \"audio_path\": \"b.wav\", \"duration_s\": 1.0, "
           "\"labels_path\": null, \"source_tag\": \"clean\"}\n";
  }
  CHECK_THROWS_WITH_AS(load_manifest(path), doctest::Contains("dup"), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("manifest resolves relative paths against its directory") {
  const fs::path dir = testutil::fresh_dir("manifest_resolve");
  Manifest manifest;
  manifest.entries.push_back({"u", "wav/u.wav", 1.0, std::nullopt, SourceTag::kClean});
  const std::string path = (dir / "m.jsonl").string();
  save_manifest(manifest, path);
  const Manifest loaded = load_manifest(path);
  CHECK(loaded.resolve_audio_path(loaded.entries[0]) == (dir / "wav/u.wav").string());
  fs::remove_all(dir);
}

TEST_CASE("synthetic corpus is byte deterministic") {
  const fs::path dir1 = testutil::fresh_dir("corpus_det_1");
  const fs::path dir2 = testutil::fresh_dir("corpus_det_2");
  SynthCorpusSpec spec;
  spec.num_utterances = 4;
  spec.utterance_duration_s = 0.6;
  spec.seed = 77;
  const StftConfig stft;
  const Manifest m1 = generate_synth_corpus(spec, stft, dir1.string());
  const Manifest m2 = generate_synth_corpus(spec, stft, dir2.string());
  REQUIRE(m1.size() == 4);
  REQUIRE(m2.size() == 4);
  for (size_t i = 0; i < m1.size(); ++i) {
    CHECK(m1.entries[i].id == m2.entries[i].id);
    CHECK(testutil::read_file_bytes(m1.resolve_audio_path(m1.entries[i])) ==
          testutil::read_file_bytes(m2.resolve_audio_path(m2.entries[i])));
    CHECK(testutil::read_file_bytes(*m1.resolve_labels_path(m1.entries[i])) ==
          testutil::read_file_bytes(*m2.resolve_labels_path(m2.entries[i])));
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("corpus labels align with the analysis frame grid") {
  const fs::path dir = testutil::fresh_dir("corpus_labels");
  SynthCorpusSpec spec;
  spec.num_utterances = 3;
  spec.utterance_duration_s = 1.0;
  spec.num_phoneme_classes = 5;
  spec.seed = 5;
  const StftConfig stft;
  const Manifest manifest = generate_synth_corpus(spec, stft, dir.string());
  for (const ManifestEntry &entry : manifest.entries) {
    const AudioBuffer audio = read_wav(manifest.resolve_audio_path(entry));
    const FrameLabels labels = load_frame_labels(*manifest.resolve_labels_path(entry));
    CHECK(int(labels.labels.size()) == num_stft_frames(audio.samples.size(), stft));
    CHECK(labels.num_classes == 5);
    for (int label : labels.labels) {
      CHECK(label >= 0);
      CHECK(label < 5);
    }
  }
  // Every class appears somewhere in a 3-utterance corpus of segments.
  std::vector<int> seen(5, 0);
  for (const ManifestEntry &entry : manifest.entries) {
    const FrameLabels labels = load_frame_labels(*manifest.resolve_labels_path(entry));
    for (int label : labels.labels) seen[label] = 1;
  }
  int distinct = 0;
  for (int s : seen) distinct += s;
  CHECK(distinct >= 3);
  fs::remove_all(dir);
}

TEST_CASE("corpus class frequencies are distinct and ordered") {
  for (int num_classes : {2, 5, 7}) {
    double prev_base = 0.0;
    for (int c = 0; c < num_classes; ++c) {
      const std::array<double, 3> freqs = synth_class_frequencies(c, num_classes);
      CHECK(freqs[0] > prev_base + 100.0);
      CHECK(freqs[1] > freqs[0]);
      CHECK(freqs[2] > freqs[1]);
      CHECK(freqs[2] < 8000.0);
      prev_base = freqs[0];
    }
  }
  CHECK_THROWS(synth_class_frequencies(5, 5));
  CHECK_THROWS(synth_class_frequencies(-1, 5));
}

TEST_CASE("frame labels round-trip") {
  const fs::path dir = testutil::fresh_dir("labels_roundtrip");
  FrameLabels labels;
  labels.labels = {0, 1, 2, 1, 0, 4};
  labels.num_classes = 5;
  const std::string path = (dir / "l.txt").string();
  save_frame_labels(labels, path);
  const FrameLabels back = load_frame_labels(path);
  CHECK(back.num_classes == 5);
  CHECK(back.labels == labels.labels);
  fs::remove_all(dir);
}
