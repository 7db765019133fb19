// src/apc_features.cc

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

#include "augssl/apc_features.h"

#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "augssl/feature_io.h"
#include "augssl/thread_pool.h"
#include "augssl/wav.h"

namespace augssl {

FeatureSequence compute_features(const AudioBuffer &buffer, const FeatureConfig &config) {
  FeatureSequence features = log_mel(buffer, config.stft, config.mel);
  if (config.standardize) standardize_in_place(features);
  return features;
}

// Cache files hold f32 values, so a fresh computation must be rounded the
// same way or results would depend on whether the cache was already warm.
static void round_to_storage_precision(FeatureSequence &features) {
  features.frame_rate = static_cast<float>(features.frame_rate);
  for (double &v : features.frames.data()) v = static_cast<float>(v);
}

FeatureSequence features_for_entry(const Manifest &manifest, const ManifestEntry &entry,
                                   const FeatureConfig &config) {
  namespace fs = std::filesystem;
  std::string cache_path;
  if (!config.cache_dir.empty()) {
    cache_path = (fs::path(config.cache_dir) / (entry.id + ".afea")).string();
    if (fs::exists(cache_path)) return load_features(cache_path);
  }
  const AudioBuffer buffer = read_wav(manifest.resolve_audio_path(entry));
  FeatureSequence features = compute_features(buffer, config);
  round_to_storage_precision(features);
  if (!cache_path.empty()) {
    fs::create_directories(config.cache_dir);
    save_features(cache_path, features);
  }
  return features;
}

void featurize_manifest(const Manifest &manifest, const FeatureConfig &config,
                        const std::string &out_dir, int num_threads) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  parallel_for(manifest.size(), num_threads, [&](size_t i) {
    const ManifestEntry &entry = manifest.entries[i];
    const AudioBuffer buffer = read_wav(manifest.resolve_audio_path(entry));
    const FeatureSequence features = compute_features(buffer, config);
    save_features((fs::path(out_dir) / (entry.id + ".afea")).string(), features);
  });
}

std::vector<FeatureSequence> load_manifest_features(const Manifest &manifest,
                                                    const FeatureConfig &config,
                                                    int num_threads) {
  std::vector<FeatureSequence> out(manifest.size());
  if (!config.cache_dir.empty()) {
    std::filesystem::create_directories(config.cache_dir);
  }
  parallel_for(manifest.size(), num_threads, [&](size_t i) {
    out[i] = features_for_entry(manifest, manifest.entries[i], config);
  });
  return out;
}

std::string feature_config_to_json(const FeatureConfig &config) {
  nlohmann::ordered_json j;
  j["window_length"] = config.stft.window_length;
  j["hop_length"] = config.stft.hop_length;
  j["fft_size"] = config.stft.fft_size;
  j["num_mels"] = config.mel.num_mels;
  j["f_min"] = config.mel.f_min;
  j["f_max"] = config.mel.f_max;
  j["log_floor"] = config.mel.log_floor;
  j["standardize"] = config.standardize;
  return j.dump();
}

FeatureConfig feature_config_from_json(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("feature config: ") + e.what());
  }
  FeatureConfig config;
  for (const auto &[key, value] : j.items()) {
    if (key == "window_length") config.stft.window_length = value.get<int>();
    else if (key == "hop_length") config.stft.hop_length = value.get<int>();
    else if (key == "fft_size") config.stft.fft_size = value.get<int>();
    else if (key == "num_mels") config.mel.num_mels = value.get<int>();
    else if (key == "f_min") config.mel.f_min = value.get<double>();
    else if (key == "f_max") config.mel.f_max = value.get<double>();
    else if (key == "log_floor") config.mel.log_floor = value.get<double>();
    else if (key == "standardize") config.standardize = value.get<bool>();
    else throw std::runtime_error("feature config: unknown key: " + key);
  }
  config.stft.validate();
  return config;
}

}  // namespace augssl
