// src/feature_io.cc

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

#include "augssl/feature_io.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include "augssl/binio.h"
#include "augssl/version.h"

namespace augssl {

static const char kFeatureMagic[4] = {'A', 'F', 'E', 'A'};

void save_features(const std::string &path, const FeatureSequence &features) {
  check_finite(features.frames, "save_features: " + path);
  // Unique per thread so concurrent writers of the same file cannot collide;
  // the rename stays atomic and all writers produce identical bytes.
  const size_t tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  const std::string tmp = path + ".tmp." + std::to_string(tid);
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("feature file: cannot open for write: " + tmp);
    write_bytes(os, kFeatureMagic, 4);
    write_u32_le(os, kFeatureFileVersion);
    write_u32_le(os, static_cast<uint32_t>(features.frames.rows()));
    write_u32_le(os, static_cast<uint32_t>(features.frames.cols()));
    write_f32_le(os, static_cast<float>(features.frame_rate));
    for (double v : features.frames.data()) write_f32_le(os, static_cast<float>(v));
    if (!os) throw std::runtime_error("feature file: write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

FeatureSequence load_features(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("feature file: cannot open: " + path);
  char magic[4];
  read_bytes(is, magic, 4, "feature file magic in " + path);
  if (std::memcmp(magic, kFeatureMagic, 4) != 0) {
    throw std::runtime_error("feature file: bad magic: " + path);
  }
  const uint32_t version = read_u32_le(is);
  if (version != kFeatureFileVersion) {
    throw std::runtime_error("feature file: unsupported version " +
                             std::to_string(version) + ": " + path);
  }
  const uint32_t num_frames = read_u32_le(is);
  const uint32_t dim = read_u32_le(is);
  FeatureSequence features;
  features.frame_rate = read_f32_le(is);
  features.frames = Matrix(static_cast<int>(num_frames), static_cast<int>(dim));
  for (double &v : features.frames.data()) v = read_f32_le(is);
  return features;
}

}  // namespace augssl
