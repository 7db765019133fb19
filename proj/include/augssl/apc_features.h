// include/augssl/apc_features.h

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

#ifndef AUGSSL_APC_FEATURES_H_
#define AUGSSL_APC_FEATURES_H_

#include <string>
#include <vector>

#include "augssl/manifest.h"
#include "augssl/mel.h"

namespace augssl {

// Frontend settings shared by every stage that consumes audio. cache_dir, if
// set, holds one AFEA file per utterance id; cached files are trusted, so a
// cache dir must not be shared between different frontend settings.
struct FeatureConfig {
  StftConfig stft;
  MelConfig mel;
  bool standardize = false;
  std::string cache_dir;
};

FeatureSequence compute_features(const AudioBuffer &buffer, const FeatureConfig &config);

// Features for one manifest entry, going through the cache when enabled.
// Values are rounded to AFEA storage precision even on a cache miss, so the
// result is bit-identical whether or not the cache file already existed.
FeatureSequence features_for_entry(const Manifest &manifest, const ManifestEntry &entry,
                                   const FeatureConfig &config);

// Writes <out_dir>/<id>.afea for every entry.
void featurize_manifest(const Manifest &manifest, const FeatureConfig &config,
                        const std::string &out_dir, int num_threads = 1);

// Features for the whole manifest, order matching the entries.
std::vector<FeatureSequence> load_manifest_features(const Manifest &manifest,
                                                    const FeatureConfig &config,
                                                    int num_threads = 1);

// JSON form of the frontend settings. cache_dir is runtime plumbing and is
// not serialized.
std::string feature_config_to_json(const FeatureConfig &config);
FeatureConfig feature_config_from_json(const std::string &json_text);

}  // namespace augssl

#endif  // AUGSSL_APC_FEATURES_H_
