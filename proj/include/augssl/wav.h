// include/augssl/wav.h

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

#ifndef AUGSSL_WAV_H_
#define AUGSSL_WAV_H_

#include <string>

#include "augssl/audio_buffer.h"

namespace augssl {

// Reads a RIFF/WAVE file. Accepts mono PCM 16-bit integer or 32-bit IEEE
// float data; anything else (including multichannel audio) is an error,
// never silently downmixed. 16-bit samples are normalized by 1/32768.
AudioBuffer read_wav(const std::string &path);

// Writes mono 16-bit PCM little-endian. Samples are clipped to [-1, 1]
// with saturation before quantization, so a read-back differs from the
// input by at most 1/32768 per sample.
void write_wav(const AudioBuffer &buffer, const std::string &path);

}  // namespace augssl

#endif  // AUGSSL_WAV_H_
