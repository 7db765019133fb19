// include/augssl/fft.h

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

#ifndef AUGSSL_FFT_H_
#define AUGSSL_FFT_H_

#include <complex>
#include <vector>

namespace augssl {

// In-place iterative radix-2 Cooley-Tukey transform. data.size() must be a
// power of two. The inverse applies the 1/N factor, so
// ifft(fft(x)) == x up to roundoff.
void fft_in_place(std::vector<std::complex<double>> &data, bool inverse = false);

bool is_power_of_two(size_t n);

}  // namespace augssl

#endif  // AUGSSL_FFT_H_
