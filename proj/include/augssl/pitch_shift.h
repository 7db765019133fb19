// include/augssl/pitch_shift.h

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

#ifndef AUGSSL_PITCH_SHIFT_H_
#define AUGSSL_PITCH_SHIFT_H_

#include "augssl/audio_buffer.h"

namespace augssl {

// Phase-vocoder analysis window and synthesis hop (4x overlap).
constexpr int kPitchWindow = 1024;
constexpr int kPitchHop = 256;

// Shifts dominant frequencies by 2^(semitones/12) while preserving duration:
// phase-vocoder time stretch by the same factor, then linear-interpolation
// resampling back to the original sample count. Output length equals input
// length exactly. Requires |semitones| <= 12 and at least 4 analysis windows
// of audio.
AudioBuffer pitch_shift(const AudioBuffer &buffer, double semitones);

}  // namespace augssl

#endif  // AUGSSL_PITCH_SHIFT_H_
