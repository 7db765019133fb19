// src/binio.cc

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

#include "augssl/binio.h"

#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace augssl {

void write_bytes(std::ostream &os, const void *data, size_t n) {
  os.write(static_cast<const char *>(data), static_cast<std::streamsize>(n));
}

void write_u16_le(std::ostream &os, uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff)};
  write_bytes(os, b, 2);
}

void write_u32_le(std::ostream &os, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  write_bytes(os, b, 4);
}

void write_i16_le(std::ostream &os, int16_t v) {
  write_u16_le(os, static_cast<uint16_t>(v));
}

void write_f32_le(std::ostream &os, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  write_u32_le(os, bits);
}

void read_bytes(std::istream &is, void *data, size_t n, const std::string &what) {
  is.read(static_cast<char *>(data), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(is.gcount()) != n) {
    throw std::runtime_error("truncated read: " + what);
  }
}

uint16_t read_u16_le(std::istream &is) {
  unsigned char b[2];
  read_bytes(is, b, 2, "u16");
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

uint32_t read_u32_le(std::istream &is) {
  unsigned char b[4];
  read_bytes(is, b, 4, "u32");
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

int16_t read_i16_le(std::istream &is) {
  return static_cast<int16_t>(read_u16_le(is));
}

float read_f32_le(std::istream &is) {
  uint32_t bits = read_u32_le(is);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

}  // namespace augssl
