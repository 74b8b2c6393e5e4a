// Copyright 2026 The jointenc Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JOINTENC_PARALLEL_H_
#define JOINTENC_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace jointenc {

// Runs body(i) for i in [0, count) on up to `threads` workers (0 picks the
// hardware concurrency). Iterations must not share mutable state. The first
// exception thrown by any iteration is rethrown after all workers stop.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& body,
                 unsigned threads = 0);

}  // namespace jointenc

#endif  // JOINTENC_PARALLEL_H_
