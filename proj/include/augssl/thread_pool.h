// include/augssl/thread_pool.h

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

#ifndef AUGSSL_THREAD_POOL_H_
#define AUGSSL_THREAD_POOL_H_

#include <functional>
#include <cstddef>

namespace augssl {

// Runs fn(i) for i in [0, n). With num_threads > 1 the indices are processed
// by a small worker group; fn must only touch per-index state (write to slot
// i) so results do not depend on scheduling. The first exception thrown by
// any worker is rethrown on the calling thread after all workers join.
void parallel_for(size_t n, int num_threads, const std::function<void(size_t)> &fn);

}  // namespace augssl

#endif  // AUGSSL_THREAD_POOL_H_
