// src/manifest.cc

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

#include "augssl/manifest.h"

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace fs = std::filesystem;

namespace augssl {

std::string source_tag_name(SourceTag tag) {
  switch (tag) {
    case SourceTag::kClean: return "clean";
    case SourceTag::kNoiseAug: return "noise_aug";
    case SourceTag::kPitchAug: return "pitch_aug";
    case SourceTag::kMixedCorpus: return "mixed_corpus";
  }
  throw std::runtime_error("manifest: invalid source tag");
}

SourceTag parse_source_tag(const std::string &name) {
  if (name == "clean") return SourceTag::kClean;
  if (name == "noise_aug") return SourceTag::kNoiseAug;
  if (name == "pitch_aug") return SourceTag::kPitchAug;
  if (name == "mixed_corpus") return SourceTag::kMixedCorpus;
  throw std::runtime_error("manifest: unknown source_tag \"" + name + "\"");
}

double Manifest::total_duration_s() const {
  double total = 0.0;
  for (const auto &e : entries) total += e.duration_s;
  return total;
}

namespace {
std::string resolve(const std::string &base_dir, const std::string &path) {
  if (path.empty() || fs::path(path).is_absolute() || base_dir.empty()) return path;
  return (fs::path(base_dir) / path).string();
}
}  // namespace

std::string Manifest::resolve_audio_path(const ManifestEntry &entry) const {
  return resolve(base_dir, entry.audio_path);
}

std::optional<std::string> Manifest::resolve_labels_path(const ManifestEntry &entry) const {
  if (!entry.labels_path) return std::nullopt;
  return resolve(base_dir, *entry.labels_path);
}

Manifest load_manifest(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("manifest: cannot open " + path);

  Manifest manifest;
  manifest.base_dir = fs::path(path).parent_path().string();
  std::unordered_set<std::string> seen_ids;

  std::string line;
  size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception &e) {
      throw std::runtime_error("manifest: parse error at " + path + ":" +
                               std::to_string(line_no) + ": " + e.what());
    }
    try {
      ManifestEntry entry;
      entry.id = j.at("id").get<std::string>();
      entry.audio_path = j.at("audio_path").get<std::string>();
      entry.duration_s = j.at("duration_s").get<double>();
      if (j.contains("labels_path") && !j.at("labels_path").is_null()) {
        entry.labels_path = j.at("labels_path").get<std::string>();
      }
      entry.source_tag = parse_source_tag(j.at("source_tag").get<std::string>());
      if (entry.duration_s <= 0.0) throw std::runtime_error("duration_s must be positive");
      if (!seen_ids.insert(entry.id).second) {
        throw std::runtime_error("duplicate id \"" + entry.id + "\"");
      }
      manifest.entries.push_back(std::move(entry));
    } catch (const std::exception &e) {
      throw std::runtime_error("manifest: invalid record at " + path + ":" +
                               std::to_string(line_no) + ": " + e.what());
    }
  }
  return manifest;
}

void save_manifest(const Manifest &manifest, const std::string &path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("manifest: cannot write " + path);
  for (const auto &e : manifest.entries) {
    nlohmann::ordered_json j;
    j["id"] = e.id;
    j["audio_path"] = e.audio_path;
    j["duration_s"] = e.duration_s;
    if (e.labels_path) {
      j["labels_path"] = *e.labels_path;
    } else {
      j["labels_path"] = nullptr;
    }
    j["source_tag"] = source_tag_name(e.source_tag);
    f << j.dump() << "\n";
  }
  if (!f) throw std::runtime_error("manifest: write failed for " + path);
}

void validate_labels(const FrameLabels &labels) {
  if (labels.num_classes <= 0) throw std::runtime_error("labels: num_classes must be positive");
  for (int v : labels.labels) {
    if (v < 0 || v >= labels.num_classes) {
      throw std::runtime_error("labels: label " + std::to_string(v) + " outside [0, " +
                               std::to_string(labels.num_classes) + ")");
    }
  }
}

FrameLabels load_frame_labels(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("labels: cannot open " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception &e) {
    throw std::runtime_error("labels: parse error in " + path + ": " + e.what());
  }
  FrameLabels labels;
  labels.num_classes = j.at("num_classes").get<int>();
  labels.labels = j.at("labels").get<std::vector<int>>();
  validate_labels(labels);
  return labels;
}

void save_frame_labels(const FrameLabels &labels, const std::string &path) {
  validate_labels(labels);
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("labels: cannot write " + path);
  nlohmann::ordered_json j;
  j["num_classes"] = labels.num_classes;
  j["labels"] = labels.labels;
  f << j.dump() << "\n";
  if (!f) throw std::runtime_error("labels: write failed for " + path);
}

}  // namespace augssl
