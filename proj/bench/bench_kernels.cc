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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "affstab/affine_form.h"
#include "affstab/beyond.h"
#include "affstab/measure.h"
#include "affstab/oracle.h"

namespace affstab {
namespace {

Exec exec_of(const benchmark::State &state) {
    return state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
}

void label(benchmark::State &state) {
    state.SetLabel(state.range(0) == 0 ? "serial" : "openmp x" + std::to_string(max_threads()));
}

Circuit layered_circuit(size_t n, size_t layers) {
    std::mt19937_64 rng(7);
    Circuit c;
    c.n_qubits = n;
    for (size_t l = 0; l < layers; ++l) {
        for (size_t q = 0; q < n; ++q) {
            c.gates.push_back(Gate::h(q));
            c.gates.push_back(Gate::zrot(q, static_cast<int64_t>(rng() % 7) + 1, 8));
        }
        for (size_t q = 0; q + 1 < n; q += 2) {
            c.gates.push_back(Gate::cnot(q, q + 1));
        }
        c.gates.push_back(Gate::toffoli(0, 1, n - 1));
    }
    return c;
}

Circuit ht_circuit(size_t n, size_t m, size_t classical) {
    std::mt19937_64 rng(11);
    Circuit c;
    c.n_qubits = n;
    for (size_t q = 0; q < m; ++q) {
        c.gates.push_back(Gate::h(q));
    }
    for (size_t k = 0; k < classical; ++k) {
        const size_t a = rng() % n, b = (a + 1 + rng() % (n - 1)) % n;
        size_t t = rng() % n;
        while (t == a || t == b) {
            t = (t + 1) % n;
        }
        c.gates.push_back(k % 3 == 0 ? Gate::cnot(a, b) : Gate::toffoli(a, b, t));
    }
    c.measured = {n - 1, n - 2};
    return c;
}

void BM_Statevector(benchmark::State &state) {
    const Circuit c = layered_circuit(static_cast<size_t>(state.range(1)), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_statevector(c, exec_of(state)));
    }
    label(state);
}
BENCHMARK(BM_Statevector)->ArgsProduct({{0, 1}, {10, 14}})->Unit(benchmark::kMillisecond);

void BM_HtStrongCount(benchmark::State &state) {
    const Circuit c = ht_circuit(24, static_cast<size_t>(state.range(1)), 40);
    const BitVector alpha = BitVector::from_string("10");
    for (auto _ : state) {
        benchmark::DoNotOptimize(ht_strong_count(c, c.measured, alpha, kDefaultWidthLimit, exec_of(state)));
    }
    label(state);
}
BENCHMARK(BM_HtStrongCount)->ArgsProduct({{0, 1}, {12, 18}})->Unit(benchmark::kMillisecond);

void BM_HtStrongDistribution(benchmark::State &state) {
    const Circuit c = ht_circuit(24, static_cast<size_t>(state.range(1)), 40);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ht_strong_distribution(c, c.measured, kDefaultWidthLimit, exec_of(state)));
    }
    label(state);
}
BENCHMARK(BM_HtStrongDistribution)->ArgsProduct({{0, 1}, {16}})->Unit(benchmark::kMillisecond);

void BM_CliffordShots(benchmark::State &state) {
    Circuit c = layered_circuit(40, 1);
    c.gates.erase(std::remove_if(c.gates.begin(), c.gates.end(),
                                 [](const Gate &g) { return g.kind == GateKind::ZROT || g.kind == GateKind::TOFFOLI; }),
                  c.gates.end());
    const AffineForm s = run_clifford(c);
    std::vector<size_t> all(40);
    std::iota(all.begin(), all.end(), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            run_shots(static_cast<uint64_t>(state.range(1)), 1, exec_of(state), [&](std::mt19937_64 &rng) { return weak_sample(s, all, rng); }));
    }
    label(state);
}
BENCHMARK(BM_CliffordShots)->ArgsProduct({{0, 1}, {10000}})->Unit(benchmark::kMillisecond);

void BM_OperatorCompare(benchmark::State &state) {
    const Circuit c = layered_circuit(static_cast<size_t>(state.range(1)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(proportional_as_operators(c, c, 1e-9, exec_of(state)));
    }
    label(state);
}
BENCHMARK(BM_OperatorCompare)->ArgsProduct({{0, 1}, {8}})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace affstab

BENCHMARK_MAIN();
