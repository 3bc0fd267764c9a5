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
#include <random>
#include <span>
#include <vector>

#include "affstab/affine_form.h"
#include "affstab/circuit.h"
#include "affstab/measure.h"
#include "affstab/parallel.h"

namespace affstab {

inline constexpr size_t kDefaultWidthLimit = 24;

/// Invertible map on {0,1}^n given as a list of X / CNOT / TOFFOLI gates.
struct ClassicalFunction {
    size_t n = 0;
    std::vector<Gate> gates;

    /// Throws UsageError if any gate is not classical or is out of range.
    static ClassicalFunction from_gates(size_t n, std::span<const Gate> gates);
    /// Every gate is self-inverse, so the inverse is the reversed list.
    ClassicalFunction inverse() const;
};

BitVector eval_classical(const ClassicalFunction &f, const BitVector &x);

/// Exact probability numerator / 2^m from exhaustive enumeration.
struct CountResult {
    uint64_t numerator = 0;
    unsigned m = 0;

    DyadicRational as_fraction() const;
    double probability() const;
    bool operator==(const CountResult &) const = default;
};

/// Weak simulation of an HTForm circuit: uniform bits on the Hadamard qubits, zeros elsewhere,
/// pushed through the classical suffix.
Outcome ht_weak_sample(const Circuit &c, std::mt19937_64 &rng);

/// Exact probability of `alpha` on `subset` by enumerating all 2^m Hadamard inputs.
/// Throws CapacityError when m > width_limit.
CountResult ht_strong_count(const Circuit &c, std::span<const size_t> subset, const BitVector &alpha,
                            size_t width_limit = kDefaultWidthLimit, Exec exec = Exec::Parallel);

/// Counts for every outcome on `subset` in one enumeration pass; index bit i is subset[i].
/// The counts sum to 2^m.
std::vector<uint64_t> ht_strong_distribution(const Circuit &c, std::span<const size_t> subset,
                                             size_t width_limit = kDefaultWidthLimit, Exec exec = Exec::Parallel);

/// Supplies full-width input bit strings with some fixed distribution.
class InputSampler {
   public:
    virtual ~InputSampler() = default;
    virtual size_t num_qubits() const = 0;
    virtual BitVector draw(std::mt19937_64 &rng) const = 0;
};

/// Independent bits with P(x_i = 1) = |b_i|^2.
class ProductPrepSampler final : public InputSampler {
   public:
    explicit ProductPrepSampler(std::vector<QubitPrep> prep);
    size_t num_qubits() const override {
        return prep_.size();
    }
    BitVector draw(std::mt19937_64 &rng) const override;

   private:
    std::vector<QubitPrep> prep_;
    std::vector<double> p_one_;
};

/// Full computational-basis measurement of a stabilizer state.
class AffineFormSampler final : public InputSampler {
   public:
    explicit AffineFormSampler(AffineForm state);
    size_t num_qubits() const override {
        return state_.num_qubits();
    }
    BitVector draw(std::mt19937_64 &rng) const override;

   private:
    AffineForm state_;
    std::vector<size_t> all_;
};

/// Draws an input, applies the classical gates of `suffix` and skips its diagonal gates.
Outcome sample_classical_diagonal_suffix(const InputSampler &input, std::span<const Gate> suffix,
                                         std::span<const size_t> measured, std::mt19937_64 &rng);

/// Weak simulation of a ProductFrontClassicalDiagonal circuit.
Outcome product_front_sample(const Circuit &c, std::mt19937_64 &rng);

/// Exact output marginal of a ProductFrontClassicalDiagonal circuit by enumerating all 2^n
/// inputs (weights |chi_x|^2). Throws CapacityError when n > width_limit.
std::vector<double> product_front_distribution(const Circuit &c, std::span<const size_t> subset,
                                               size_t width_limit = kDefaultWidthLimit);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform53(std::mt19937_64 &rng);

/// Stream for shot `shot` of a run seeded with `seed`, seeded from seed ^ shot.
std::mt19937_64 shot_rng(uint64_t seed, uint64_t shot);

/// Runs `draw(rng)` once per shot, each with shot_rng(seed, shot); the output is independent of
/// the execution policy and thread count.
template <typename F>
std::vector<Outcome> run_shots(uint64_t shots, uint64_t seed, Exec exec, F &&draw) {
    std::vector<Outcome> out(shots);
    for_each_index(
        static_cast<int64_t>(shots), exec,
        [&](int64_t j) {
            auto rng = shot_rng(seed, static_cast<uint64_t>(j));
            out[static_cast<size_t>(j)] = draw(rng);
        },
        256);
    return out;
}

}  // namespace affstab
