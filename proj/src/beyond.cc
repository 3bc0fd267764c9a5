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

#include "affstab/beyond.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "affstab/errors.h"

namespace affstab {

namespace {

bool is_classical(GateKind k) {
    return k == GateKind::X || k == GateKind::CNOT || k == GateKind::TOFFOLI || k == GateKind::SWAP;
}

// Gate compiled to bit masks for widths up to 64: if (x & controls) == controls, x ^= flip.
// SWAP is stored with controls == 0 and handled separately.
struct WordGate {
    uint64_t controls;
    uint64_t flip;
    bool swap;
};

std::vector<WordGate> compile_words(std::span<const Gate> gates) {
    std::vector<WordGate> out;
    for (const auto &g : gates) {
        const auto bit = [&](size_t k) { return uint64_t{1} << g.qubits[k]; };
        switch (g.kind) {
            case GateKind::X:
                out.push_back({0, bit(0), false});
                break;
            case GateKind::CNOT:
                out.push_back({bit(0), bit(1), false});
                break;
            case GateKind::TOFFOLI:
                out.push_back({bit(0) | bit(1), bit(2), false});
                break;
            case GateKind::SWAP:
                out.push_back({bit(0), bit(1), true});
                break;
            default:
                break;
        }
    }
    return out;
}

inline uint64_t eval_words(std::span<const WordGate> gates, uint64_t x) {
    for (const auto &g : gates) {
        if (g.swap) {
            bool a = x & g.controls, b = x & g.flip;
            if (a != b) {
                x ^= g.controls | g.flip;
            }
        } else if ((x & g.controls) == g.controls) {
            x ^= g.flip;
        }
    }
    return x;
}

void apply_classical(const Gate &g, BitVector &x) {
    switch (g.kind) {
        case GateKind::X:
            x.flip(g.qubits[0]);
            break;
        case GateKind::CNOT:
            if (x[g.qubits[0]]) {
                x.flip(g.qubits[1]);
            }
            break;
        case GateKind::TOFFOLI:
            if (x[g.qubits[0]] && x[g.qubits[1]]) {
                x.flip(g.qubits[2]);
            }
            break;
        case GateKind::SWAP: {
            bool a = x[g.qubits[0]];
            x.set(g.qubits[0], x[g.qubits[1]]);
            x.set(g.qubits[1], a);
            break;
        }
        default:
            break;
    }
}

void check_subset(size_t n, std::span<const size_t> subset) {
    std::set<size_t> seen;
    for (size_t q : subset) {
        if (q >= n || !seen.insert(q).second) {
            throw UsageError("measured qubits must be distinct and in range");
        }
    }
}

Outcome restrict(const BitVector &x, std::span<const size_t> subset) {
    Outcome out{std::vector<size_t>(subset.begin(), subset.end()), BitVector(subset.size())};
    for (size_t i = 0; i < subset.size(); ++i) {
        out.bits.set(i, x[subset[i]]);
    }
    return out;
}

struct HtParts {
    std::vector<size_t> hadamards;
    std::span<const Gate> suffix;
};

HtParts split_ht(const Circuit &c) {
    c.validate();
    if (!has_ht_shape(c)) {
        throw ClassificationError("circuit is not an HT circuit (class " + std::string(to_string(classify(c))) + ")");
    }
    const size_t prefix = hadamard_prefix_length(c);
    HtParts parts;
    for (size_t k = 0; k < prefix; ++k) {
        parts.hadamards.push_back(c.gates[k].qubits[0]);
    }
    parts.suffix = std::span<const Gate>(c.gates).subspan(prefix);
    return parts;
}

uint64_t key_of(uint64_t y, std::span<const size_t> subset) {
    uint64_t key = 0;
    for (size_t k = 0; k < subset.size(); ++k) {
        key |= ((y >> subset[k]) & 1) << k;
    }
    return key;
}

uint64_t key_of(const BitVector &y, std::span<const size_t> subset) {
    uint64_t key = 0;
    for (size_t k = 0; k < subset.size(); ++k) {
        key |= uint64_t{y[subset[k]]} << k;
    }
    return key;
}

uint64_t scatter(uint64_t j, std::span<const size_t> positions) {
    uint64_t x = 0;
    for (size_t k = 0; k < positions.size(); ++k) {
        x |= ((j >> k) & 1) << positions[k];
    }
    return x;
}

BitVector scatter(size_t n, uint64_t j, std::span<const size_t> positions) {
    BitVector x(n);
    for (size_t k = 0; k < positions.size(); ++k) {
        x.set(positions[k], (j >> k) & 1);
    }
    return x;
}

}  // namespace

ClassicalFunction ClassicalFunction::from_gates(size_t n, std::span<const Gate> gates) {
    for (const auto &g : gates) {
        if (!is_classical(g.kind)) {
            throw UsageError("classical function may only contain x, cnot, toffoli and swap");
        }
        for (size_t q : g.qubits) {
            if (q >= n) {
                throw UsageError("classical gate qubit out of range");
            }
        }
    }
    return ClassicalFunction{n, std::vector<Gate>(gates.begin(), gates.end())};
}

ClassicalFunction ClassicalFunction::inverse() const {
    return ClassicalFunction{n, std::vector<Gate>(gates.rbegin(), gates.rend())};
}

BitVector eval_classical(const ClassicalFunction &f, const BitVector &x) {
    if (x.size() != f.n) {
        throw UsageError("eval_classical: input has wrong width");
    }
    BitVector y = x;
    for (const auto &g : f.gates) {
        apply_classical(g, y);
    }
    return y;
}

DyadicRational CountResult::as_fraction() const {
    DyadicRational r{numerator, m};
    r.normalize();
    return r;
}

double CountResult::probability() const {
    return std::ldexp(static_cast<double>(numerator), -static_cast<int>(m));
}

double uniform53(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 shot_rng(uint64_t seed, uint64_t shot) {
    // Consecutive integer seeds give visibly biased first outputs from mt19937_64, so the
    // combined seed is scrambled with the splitmix64 finalizer first.
    uint64_t z = (seed ^ shot) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return std::mt19937_64(z ^ (z >> 31));
}

Outcome ht_weak_sample(const Circuit &c, std::mt19937_64 &rng) {
    const HtParts parts = split_ht(c);
    BitVector x(c.n_qubits);
    for (size_t base = 0; base < parts.hadamards.size(); base += 64) {
        uint64_t word = rng();
        for (size_t k = base; k < std::min(parts.hadamards.size(), base + 64); ++k) {
            x.set(parts.hadamards[k], (word >> (k - base)) & 1);
        }
    }
    for (const auto &g : parts.suffix) {
        apply_classical(g, x);
    }
    return restrict(x, c.measured);
}

std::vector<uint64_t> ht_strong_distribution(const Circuit &c, std::span<const size_t> subset, size_t width_limit, Exec exec) {
    const HtParts parts = split_ht(c);
    check_subset(c.n_qubits, subset);
    const size_t m = parts.hadamards.size();
    if (m > width_limit || m >= 63) {
        throw CapacityError("exact HT probabilities need 2^" + std::to_string(m) + " evaluations; width limit is " +
                            std::to_string(width_limit));
    }
    if (subset.size() > 24) {
        throw CapacityError("at most 24 measured qubits for a full distribution");
    }
    std::vector<uint64_t> counts(size_t{1} << subset.size(), 0);
    const auto total = static_cast<int64_t>(uint64_t{1} << m);
    if (exec == Exec::Parallel && total >= kParallelThreshold) {
        // Per-thread histograms merged at the end; integer sums are order independent.
        const int threads = max_threads();
        std::vector<std::vector<uint64_t>> local(static_cast<size_t>(threads), std::vector<uint64_t>(counts.size(), 0));
        const auto words = compile_words(parts.suffix);
        const bool narrow = c.n_qubits <= 64;
#pragma omp parallel for schedule(static)
        for (int64_t j = 0; j < total; ++j) {
#ifdef _OPENMP
            auto &hist = local[static_cast<size_t>(omp_get_thread_num())];
#else
            auto &hist = local[0];
#endif
            if (narrow) {
                hist[key_of(eval_words(words, scatter(static_cast<uint64_t>(j), parts.hadamards)), subset)]++;
            } else {
                BitVector x = scatter(c.n_qubits, static_cast<uint64_t>(j), parts.hadamards);
                for (const auto &g : parts.suffix) {
                    apply_classical(g, x);
                }
                hist[key_of(x, subset)]++;
            }
        }
        for (const auto &hist : local) {
            for (size_t k = 0; k < counts.size(); ++k) {
                counts[k] += hist[k];
            }
        }
        return counts;
    }
    for (int64_t j = 0; j < total; ++j) {
        BitVector x = scatter(c.n_qubits, static_cast<uint64_t>(j), parts.hadamards);
        for (const auto &g : parts.suffix) {
            apply_classical(g, x);
        }
        counts[key_of(x, subset)]++;
    }
    return counts;
}

CountResult ht_strong_count(const Circuit &c, std::span<const size_t> subset, const BitVector &alpha, size_t width_limit, Exec exec) {
    const HtParts parts = split_ht(c);
    check_subset(c.n_qubits, subset);
    if (alpha.size() != subset.size()) {
        throw UsageError("ht_strong_count: outcome length does not match measured subset");
    }
    const size_t m = parts.hadamards.size();
    if (m > width_limit || m >= 63) {
        throw CapacityError("exact HT probabilities need 2^" + std::to_string(m) + " evaluations; width limit is " +
                            std::to_string(width_limit));
    }
    const auto total = static_cast<int64_t>(uint64_t{1} << m);
    uint64_t hits = 0;
    if (exec == Exec::Serial) {
        // Reference path: generic bit vectors, one gate at a time.
        for (int64_t j = 0; j < total; ++j) {
            BitVector x = scatter(c.n_qubits, static_cast<uint64_t>(j), parts.hadamards);
            for (const auto &g : parts.suffix) {
                apply_classical(g, x);
            }
            bool match = true;
            for (size_t i = 0; i < subset.size() && match; ++i) {
                match = x[subset[i]] == alpha[i];
            }
            hits += match ? 1 : 0;
        }
    } else if (c.n_qubits <= 64) {
        const auto words = compile_words(parts.suffix);
        uint64_t mask = 0, want = 0;
        for (size_t i = 0; i < subset.size(); ++i) {
            mask |= uint64_t{1} << subset[i];
            want |= uint64_t{alpha[i]} << subset[i];
        }
        hits = count_if_index(total, exec, [&](int64_t j) {
            return (eval_words(words, scatter(static_cast<uint64_t>(j), parts.hadamards)) & mask) == want;
        });
    } else {
        hits = count_if_index(total, exec, [&](int64_t j) {
            BitVector x = scatter(c.n_qubits, static_cast<uint64_t>(j), parts.hadamards);
            for (const auto &g : parts.suffix) {
                apply_classical(g, x);
            }
            for (size_t i = 0; i < subset.size(); ++i) {
                if (x[subset[i]] != alpha[i]) {
                    return false;
                }
            }
            return true;
        });
    }
    return CountResult{hits, static_cast<unsigned>(m)};
}

ProductPrepSampler::ProductPrepSampler(std::vector<QubitPrep> prep) : prep_(std::move(prep)) {
    for (const auto &qp : prep_) {
        double norm2 = std::norm(qp.a) + std::norm(qp.b);
        if (std::abs(norm2 - 1.0) > 1e-12) {
            throw UsageError("product prep amplitudes are not normalized");
        }
        p_one_.push_back(std::norm(qp.b) / norm2);
    }
}

BitVector ProductPrepSampler::draw(std::mt19937_64 &rng) const {
    BitVector x(prep_.size());
    for (size_t k = 0; k < prep_.size(); ++k) {
        // Skip the draw for deterministic qubits so default |0> inputs cost nothing.
        if (p_one_[k] == 0.0) {
            continue;
        }
        x.set(k, uniform53(rng) < p_one_[k]);
    }
    return x;
}

AffineFormSampler::AffineFormSampler(AffineForm state) : state_(std::move(state)) {
    for (size_t k = 0; k < state_.num_qubits(); ++k) {
        all_.push_back(k);
    }
}

BitVector AffineFormSampler::draw(std::mt19937_64 &rng) const {
    return weak_sample(state_, all_, rng).bits;
}

Outcome sample_classical_diagonal_suffix(const InputSampler &input, std::span<const Gate> suffix, std::span<const size_t> measured,
                                         std::mt19937_64 &rng) {
    check_subset(input.num_qubits(), measured);
    BitVector x = input.draw(rng);
    for (const auto &g : suffix) {
        // Diagonal gates only rephase basis states and never change measurement statistics.
        apply_classical(g, x);
    }
    return restrict(x, measured);
}

namespace {

std::vector<QubitPrep> prep_or_zero(const Circuit &c) {
    return c.prep ? *c.prep : std::vector<QubitPrep>(c.n_qubits);
}

void require_product_front(const Circuit &c) {
    c.validate();
    CircuitClass cls = classify(c);
    // Clifford and HT circuits without Hadamards also have this structure, but an H gate does not.
    bool ok = std::none_of(c.gates.begin(), c.gates.end(), [](const Gate &g) { return g.kind == GateKind::H; });
    if (cls == CircuitClass::OracleOnly || !ok) {
        throw ClassificationError("circuit is not product-front classical+diagonal (class " + std::string(to_string(cls)) + ")");
    }
}

}  // namespace

Outcome product_front_sample(const Circuit &c, std::mt19937_64 &rng) {
    require_product_front(c);
    ProductPrepSampler input(prep_or_zero(c));
    return sample_classical_diagonal_suffix(input, c.gates, c.measured, rng);
}

std::vector<double> product_front_distribution(const Circuit &c, std::span<const size_t> subset, size_t width_limit) {
    require_product_front(c);
    check_subset(c.n_qubits, subset);
    const size_t n = c.n_qubits;
    if (n > width_limit || n > 62) {
        throw CapacityError("product-front distribution enumerates 2^" + std::to_string(n) + " inputs; width limit is " +
                            std::to_string(width_limit));
    }
    const auto prep = prep_or_zero(c);
    const auto words = compile_words(c.gates);
    std::vector<double> out(size_t{1} << subset.size(), 0.0);
    for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
        double w = 1.0;
        for (size_t k = 0; k < n && w != 0.0; ++k) {
            w *= ((x >> k) & 1) ? std::norm(prep[k].b) : std::norm(prep[k].a);
        }
        if (w != 0.0) {
            out[key_of(eval_words(words, x), subset)] += w;
        }
    }
    return out;
}

}  // namespace affstab
