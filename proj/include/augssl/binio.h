// include/augssl/binio.h

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

#ifndef AUGSSL_BINIO_H_
#define AUGSSL_BINIO_H_

#include <cstdint>
#include <iosfwd>
#include <string>

namespace augssl {

// Little-endian primitives for the binary file formats. Byte order is
// explicit so files are identical regardless of host endianness.

void write_u16_le(std::ostream &os, uint16_t v);
void write_u32_le(std::ostream &os, uint32_t v);
void write_i16_le(std::ostream &os, int16_t v);
void write_f32_le(std::ostream &os, float v);
void write_bytes(std::ostream &os, const void *data, size_t n);

uint16_t read_u16_le(std::istream &is);
uint32_t read_u32_le(std::istream &is);
int16_t read_i16_le(std::istream &is);
float read_f32_le(std::istream &is);
// Throws with `what` in the message if fewer than n bytes are available.
void read_bytes(std::istream &is, void *data, size_t n, const std::string &what);

}  // namespace augssl

#endif  // AUGSSL_BINIO_H_
