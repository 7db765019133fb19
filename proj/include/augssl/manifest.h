// include/augssl/manifest.h

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

#ifndef AUGSSL_MANIFEST_H_
#define AUGSSL_MANIFEST_H_

#include <optional>
#include <string>
#include <vector>

namespace augssl {

// Provenance of an utterance within a corpus.
enum class SourceTag { kClean, kNoiseAug, kPitchAug, kMixedCorpus };

std::string source_tag_name(SourceTag tag);
SourceTag parse_source_tag(const std::string &name);  // throws on unknown name

// One utterance record. Relative paths are resolved against the directory
// of the manifest file they were loaded from.
struct ManifestEntry {
  std::string id;
  std::string audio_path;
  double duration_s = 0.0;
  std::optional<std::string> labels_path;
  SourceTag source_tag = SourceTag::kClean;
};

// A corpus is a list of utterance records; ids are unique within a manifest.
struct Manifest {
  std::vector<ManifestEntry> entries;
  // Directory the manifest was loaded from; empty for manifests built in
  // memory. Used to resolve relative entry paths.
  std::string base_dir;

  size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  double total_duration_s() const;
  double total_duration_hours() const { return total_duration_s() / 3600.0; }

  std::string resolve_audio_path(const ManifestEntry &entry) const;
  std::optional<std::string> resolve_labels_path(const ManifestEntry &entry) const;
};

// Loads a line-delimited JSON manifest. Errors carry the 1-based line
// number; duplicate ids are rejected naming the offending id.
Manifest load_manifest(const std::string &path);

// Writes one JSON object per line with keys id, audio_path, duration_s,
// labels_path, source_tag, in that order. save(load(save(m))) is
// byte-identical.
void save_manifest(const Manifest &manifest, const std::string &path);

// Frame-level phoneme labels, one per feature frame.
struct FrameLabels {
  std::vector<int> labels;
  int num_classes = 0;
};

void validate_labels(const FrameLabels &labels);

FrameLabels load_frame_labels(const std::string &path);
void save_frame_labels(const FrameLabels &labels, const std::string &path);

}  // namespace augssl

#endif  // AUGSSL_MANIFEST_H_
