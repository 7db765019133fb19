// src/checkpoint.cc

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

#include "augssl/checkpoint.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "augssl/binio.h"
#include "augssl/version.h"

namespace augssl {

namespace {

const char kCheckpointMagic[4] = {'A', 'C', 'K', 'P'};

void write_param(std::ostream &os, const std::string &name, const Matrix &matrix) {
  write_u32_le(os, static_cast<uint32_t>(name.size()));
  write_bytes(os, name.data(), name.size());
  write_u32_le(os, static_cast<uint32_t>(matrix.rows()));
  write_u32_le(os, static_cast<uint32_t>(matrix.cols()));
  for (double v : matrix.data()) write_f32_le(os, static_cast<float>(v));
}

void write_file(const std::string &path, const std::string &config_json,
                const std::function<void(std::ostream &)> &body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("checkpoint: cannot open for write: " + tmp);
    write_bytes(os, kCheckpointMagic, 4);
    write_u32_le(os, kCheckpointVersion);
    write_u32_le(os, static_cast<uint32_t>(config_json.size()));
    write_bytes(os, config_json.data(), config_json.size());
    body(os);
    if (!os) throw std::runtime_error("checkpoint: write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<Matrix *> registry_matrices(const ParamRegistry &registry) {
  std::vector<Matrix *> out;
  out.reserve(registry.size());
  for (const NamedParam &p : registry) out.push_back(p.matrix);
  return out;
}

const Matrix &Checkpoint::find(const std::string &name) const {
  for (const auto &[n, m] : params) {
    if (n == name) return m;
  }
  throw std::runtime_error("checkpoint: no parameter named " + name);
}

void save_checkpoint(const std::string &path, const ParamRegistry &registry,
                     const std::string &config_json) {
  write_file(path, config_json, [&](std::ostream &os) {
    write_u32_le(os, static_cast<uint32_t>(registry.size()));
    for (const NamedParam &p : registry) write_param(os, p.name, *p.matrix);
  });
}

void save_checkpoint(const std::string &path, const Checkpoint &checkpoint) {
  write_file(path, checkpoint.config_json, [&](std::ostream &os) {
    write_u32_le(os, static_cast<uint32_t>(checkpoint.params.size()));
    for (const auto &[name, matrix] : checkpoint.params) write_param(os, name, matrix);
  });
}

Checkpoint load_checkpoint(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open: " + path);
  char magic[4];
  read_bytes(is, magic, 4, "checkpoint magic in " + path);
  if (std::memcmp(magic, kCheckpointMagic, 4) != 0) {
    throw std::runtime_error("checkpoint: bad magic: " + path);
  }
  const uint32_t version = read_u32_le(is);
  if (version != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version) +
                             ": " + path);
  }
  Checkpoint ckpt;
  const uint32_t config_len = read_u32_le(is);
  ckpt.config_json.resize(config_len);
  if (config_len > 0) read_bytes(is, ckpt.config_json.data(), config_len, "config in " + path);

  const uint32_t num_params = read_u32_le(is);
  for (uint32_t i = 0; i < num_params; ++i) {
    const uint32_t name_len = read_u32_le(is);
    std::string name(name_len, '\0');
    if (name_len > 0) read_bytes(is, name.data(), name_len, "parameter name in " + path);
    const uint32_t rows = read_u32_le(is);
    const uint32_t cols = read_u32_le(is);
    Matrix matrix(static_cast<int>(rows), static_cast<int>(cols));
    for (double &v : matrix.data()) v = read_f32_le(is);
    ckpt.params.emplace_back(std::move(name), std::move(matrix));
  }
  return ckpt;
}

void load_into_registry(const Checkpoint &checkpoint, const ParamRegistry &registry) {
  if (checkpoint.params.size() != registry.size()) {
    throw std::runtime_error("checkpoint: parameter count mismatch");
  }
  for (const NamedParam &p : registry) {
    const Matrix &stored = checkpoint.find(p.name);
    if (!stored.same_shape(*p.matrix)) {
      throw std::runtime_error("checkpoint: shape mismatch for " + p.name);
    }
    *p.matrix = stored;
  }
}

}  // namespace augssl
