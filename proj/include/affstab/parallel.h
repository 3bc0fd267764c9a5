// Copyright 2026 The affstab Authors
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

#pragma once

#include <cstdint>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace affstab {

/// Selects between the serial reference loop and the OpenMP loop of a kernel.
/// Both produce bit-identical results; the serial path is what tests compare against.
enum class Exec { Serial, Parallel };

/// Default trip count below which loops stay serial even under Exec::Parallel.
inline constexpr int64_t kParallelThreshold = 1 << 12;

template <typename F>
void for_each_index(int64_t count, Exec exec, F &&body, int64_t min_parallel = kParallelThreshold) {
    if (exec == Exec::Parallel && count >= min_parallel) {
#pragma omp parallel for schedule(static)
        for (int64_t j = 0; j < count; ++j) {
            body(j);
        }
    } else {
        for (int64_t j = 0; j < count; ++j) {
            body(j);
        }
    }
}

/// Number of j in [0, count) with pred(j). Integer reduction, so the result does not depend on
/// the thread count.
template <typename F>
uint64_t count_if_index(int64_t count, Exec exec, F &&pred, int64_t min_parallel = kParallelThreshold) {
    uint64_t total = 0;
    if (exec == Exec::Parallel && count >= min_parallel) {
#pragma omp parallel for schedule(static) reduction(+ : total)
        for (int64_t j = 0; j < count; ++j) {
            total += pred(j) ? 1 : 0;
        }
    } else {
        for (int64_t j = 0; j < count; ++j) {
            total += pred(j) ? 1 : 0;
        }
    }
    return total;
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace affstab
