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
#include <string>
#include <utility>
#include <vector>

#include "affstab/affine_form.h"
#include "affstab/gf2.h"

namespace affstab {

/// Exact probability that is either 0 or 2^-gamma.
struct DyadicProb {
    bool zero = true;
    unsigned gamma = 0;

    static DyadicProb power(unsigned g) {
        return {false, g};
    }
    double to_double() const;
    /// "0", "1" or "2^-gamma".
    std::string to_string() const;
    bool operator==(const DyadicProb &) const = default;
};

/// Exact rational numerator / 2^exponent, kept in lowest terms.
struct DyadicRational {
    uint64_t numerator = 0;
    unsigned exponent = 0;

    static DyadicRational from(DyadicProb p);
    DyadicRational &operator+=(const DyadicRational &other);
    void normalize();
    double to_double() const;
    /// "0", "1", "2^-g" or "k/2^m".
    std::string to_string() const;
    bool operator==(const DyadicRational &) const = default;
};

struct Outcome {
    std::vector<size_t> qubits;
    BitVector bits;

    bool operator==(const Outcome &) const = default;
};

/// Probability of reading `alpha` on qubits `subset`. Pure GF(2) linear algebra; no floats.
DyadicProb strong_prob(const AffineForm &s, std::span<const size_t> subset, const BitVector &alpha);

/// One measurement of `subset`: draws u uniformly from {0,1}^m and reads off (R u + t) on the subset.
/// Consumes ceil(m / 64) words of `rng`.
Outcome weak_sample(const AffineForm &s, std::span<const size_t> subset, std::mt19937_64 &rng);

/// Every outcome with nonzero probability, sorted by bit string. Throws CapacityError when more
/// than `cap` outcomes exist.
std::vector<std::pair<Outcome, DyadicProb>> enumerate_support(const AffineForm &s, std::span<const size_t> subset, uint64_t cap);

}  // namespace affstab
