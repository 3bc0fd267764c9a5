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

#include <gtest/gtest.h>

#include <cmath>

#include "affstab/beyond.h"
#include "affstab/errors.h"
#include "affstab/measure.h"
#include "affstab/oracle.h"
#include "support/test_support.h"

namespace affstab {
namespace {

using testing::Rng;

size_t hadamard_count(const Circuit &c) {
    return hadamard_prefix_length(c);
}

/// The same distribution with the Hadamard round moved into prep amplitudes.
Circuit ht_as_product_front(const Circuit &c) {
    Circuit out = c;
    const size_t m = hadamard_count(c);
    out.prep = std::vector<QubitPrep>(c.n_qubits);
    const double r = std::sqrt(0.5);
    for (size_t k = 0; k < m; ++k) {
        (*out.prep)[c.gates[k].qubits[0]] = QubitPrep{{r, 0.0}, {r, 0.0}};
    }
    out.gates.erase(out.gates.begin(), out.gates.begin() + static_cast<std::ptrdiff_t>(m));
    return out;
}

TEST(Classical, EvalMatchesOracle) {
    Rng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const size_t n = 1 + testing::uniform_index(rng, 6);
        const Circuit c = testing::random_ht(rng, n, 0, 30);
        const auto f = ClassicalFunction::from_gates(n, c.gates);
        for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
            StateVector v = StateVector::basis_state(n, x);
            run_gates(v, c.gates, Exec::Serial);
            const uint64_t y = eval_classical(f, BitVector::from_u64(n, x)).to_u64();
            EXPECT_NEAR(std::abs(v.amps[y]), 1.0, 1e-12);
            EXPECT_EQ(eval_classical(f.inverse(), BitVector::from_u64(n, y)).to_u64(), x);
        }
    }
}

TEST(Classical, RejectsNonClassicalGates) {
    const std::vector<Gate> gates{Gate::h(0)};
    EXPECT_THROW(ClassicalFunction::from_gates(1, gates), UsageError);
    const std::vector<Gate> wide{Gate::x(3)};
    EXPECT_THROW(ClassicalFunction::from_gates(2, wide), UsageError);
}

TEST(HtStrong, MatchesOracle) {
    Rng rng(62);
    for (int trial = 0; trial < 60; ++trial) {
        const size_t n = 1 + testing::uniform_index(rng, 10);
        const size_t m = testing::uniform_index(rng, n + 1);
        const Circuit c = testing::random_ht(rng, n, m, testing::uniform_index(rng, 51));
        ASSERT_TRUE(has_ht_shape(c));
        const auto marg = marginal(run_statevector(c, Exec::Serial), c.measured);
        uint64_t total = 0;
        const auto dist = ht_strong_distribution(c, c.measured, kDefaultWidthLimit, Exec::Serial);
        for (uint64_t a = 0; a < marg.size(); ++a) {
            const auto alpha = BitVector::from_u64(c.measured.size(), a);
            const auto count = ht_strong_count(c, c.measured, alpha, kDefaultWidthLimit, Exec::Serial);
            EXPECT_EQ(count.m, m);
            EXPECT_EQ(count.numerator, dist[a]);
            EXPECT_NEAR(count.probability(), marg[a], 1e-12);
            EXPECT_EQ(count, ht_strong_count(c, c.measured, alpha, kDefaultWidthLimit, Exec::Parallel));
            total += count.numerator;
        }
        EXPECT_EQ(total, uint64_t{1} << m);
        EXPECT_EQ(dist, ht_strong_distribution(c, c.measured, kDefaultWidthLimit, Exec::Parallel));
    }
}

TEST(HtStrong, CountFormatting) {
    EXPECT_EQ((CountResult{3, 3}).as_fraction().to_string(), "3/2^3");
    EXPECT_EQ((CountResult{4, 3}).as_fraction().to_string(), "2^-1");
    EXPECT_EQ((CountResult{0, 3}).as_fraction().to_string(), "0");
    EXPECT_EQ((CountResult{8, 3}).as_fraction().to_string(), "1");
}

TEST(HtStrong, WidthLimitIsEnforced) {
    Circuit c;
    c.n_qubits = 30;
    for (size_t q = 0; q < 25; ++q) {
        c.gates.push_back(Gate::h(q));
    }
    c.gates.push_back(Gate::toffoli(0, 1, 29));
    const std::vector<size_t> subset{29};
    EXPECT_THROW(ht_strong_count(c, subset, BitVector(1)), CapacityError);
    EXPECT_THROW(ht_strong_count(c, subset, BitVector(1), 12), CapacityError);
    EXPECT_THROW(ht_strong_distribution(c, subset), CapacityError);
}

TEST(HtStrong, RejectsOtherClasses) {
    Circuit c;
    c.n_qubits = 2;
    c.gates = {Gate::h(0), Gate::p(0)};
    const std::vector<size_t> subset{0};
    EXPECT_THROW(ht_strong_count(c, subset, BitVector(1)), ClassificationError);
}

TEST(HtStrong, AgreesWithStrongProbOnCliffordHt) {
    Rng rng(63);
    for (int trial = 0; trial < 100; ++trial) {
        const size_t n = 1 + testing::uniform_index(rng, 8);
        Circuit c = testing::random_ht(rng, n, testing::uniform_index(rng, n + 1), 0);
        for (int k = 0; k < 20; ++k) {
            if (n >= 2 && (rng() & 1)) {
                const size_t a = testing::uniform_index(rng, n);
                c.gates.push_back(Gate::cnot(a, (a + 1 + testing::uniform_index(rng, n - 1)) % n));
            } else {
                c.gates.push_back(Gate::x(testing::uniform_index(rng, n)));
            }
        }
        ASSERT_EQ(classify(c), CircuitClass::CliffordOnly);
        const auto s = run_clifford(c);
        for (uint64_t a = 0; a < (uint64_t{1} << c.measured.size()); ++a) {
            const auto alpha = BitVector::from_u64(c.measured.size(), a);
            const auto exact = strong_prob(s, c.measured, alpha);
            const auto count = ht_strong_count(c, c.measured, alpha);
            EXPECT_EQ(DyadicRational::from(exact), count.as_fraction());
        }
    }
}

TEST(HtWeak, ReproducibleAndOnSupport) {
    Rng rng(64);
    const Circuit c = testing::random_ht(rng, 6, 4, 30);
    const auto dist = ht_strong_distribution(c, c.measured);
    std::mt19937_64 a(5), b(5);
    for (int shot = 0; shot < 200; ++shot) {
        const auto o = ht_weak_sample(c, a);
        EXPECT_EQ(o, ht_weak_sample(c, b));
        EXPECT_GT(dist[testing::pack(o.bits)], 0u);
    }
}

TEST(HtWeak, AgreesWithProductFrontSampler) {
    Rng rng(65);
    for (int trial = 0; trial < 4; ++trial) {
        const size_t n = 3 + testing::uniform_index(rng, 4);
        const Circuit c = testing::random_ht(rng, n, 1 + testing::uniform_index(rng, n), 30);
        const Circuit pf = ht_as_product_front(c);
        ASSERT_EQ(classify(pf), CircuitClass::ProductFrontClassicalDiagonal);
        const auto counts = ht_strong_distribution(c, c.measured);
        const auto pf_dist = product_front_distribution(pf, c.measured);
        std::vector<double> expected(counts.size());
        size_t cells = 0;
        for (size_t a = 0; a < counts.size(); ++a) {
            expected[a] = std::ldexp(static_cast<double>(counts[a]), -static_cast<int>(hadamard_count(c)));
            EXPECT_NEAR(pf_dist[a], expected[a], 1e-12);
            cells += expected[a] > 0;
        }
        const uint64_t shots = 100000;
        std::vector<uint64_t> ht_counts(counts.size()), pf_counts(counts.size());
        std::mt19937_64 r1(trial), r2(trial + 100);
        for (uint64_t k = 0; k < shots; ++k) {
            ++ht_counts[testing::pack(ht_weak_sample(c, r1).bits)];
            ++pf_counts[testing::pack(product_front_sample(pf, r2).bits)];
        }
        if (cells > 1) {
            const double crit = testing::chi_square_critical(cells - 1, 1e-6);
            EXPECT_LT(testing::chi_square_statistic(ht_counts, expected, shots), crit);
            EXPECT_LT(testing::chi_square_statistic(pf_counts, expected, shots), crit);
        }
    }
}

TEST(ProductFront, DistributionMatchesOracle) {
    Rng rng(66);
    for (int trial = 0; trial < 60; ++trial) {
        const size_t n = 1 + testing::uniform_index(rng, 8);
        const Circuit c = testing::random_product_front(rng, n, 30);
        const auto oracle = marginal(run_statevector(c, Exec::Serial), c.measured);
        const auto exact = product_front_distribution(c, c.measured);
        for (size_t a = 0; a < oracle.size(); ++a) {
            EXPECT_NEAR(exact[a], oracle[a], 1e-12);
        }
    }
}

TEST(ProductFront, DiagonalGatesDoNotChangeSamples) {
    Rng rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const size_t n = 1 + testing::uniform_index(rng, 8);
        const Circuit c = testing::random_product_front(rng, n, 20);
        Circuit d = c;
        for (int k = 0; k < 10; ++k) {
            const auto pos = static_cast<std::ptrdiff_t>(testing::uniform_index(rng, d.gates.size() + 1));
            d.gates.insert(d.gates.begin() + pos, testing::random_diagonal_gate(rng, n));
        }
        EXPECT_EQ(product_front_distribution(c, c.measured), product_front_distribution(d, d.measured));
        for (uint64_t shot = 0; shot < 100; ++shot) {
            auto r1 = shot_rng(trial, shot);
            auto r2 = shot_rng(trial, shot);
            EXPECT_EQ(product_front_sample(c, r1), product_front_sample(d, r2));
        }
    }
}

TEST(ProductFront, RejectsHadamards) {
    Circuit c;
    c.n_qubits = 1;
    c.gates = {Gate::h(0)};
    std::mt19937_64 rng(0);
    EXPECT_THROW(product_front_sample(c, rng), ClassificationError);
}

TEST(ProductPrepSampler, DeterministicAmplitudes) {
    const std::vector<QubitPrep> prep{QubitPrep{{1, 0}, {0, 0}}, QubitPrep{{0, 0}, {0, 1}}};
    ProductPrepSampler sampler(prep);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 100; ++k) {
        EXPECT_EQ(sampler.draw(rng).to_string(), "01");
    }
    EXPECT_THROW(ProductPrepSampler({QubitPrep{{1, 0}, {1, 0}}}), UsageError);
}

TEST(AffineFormSampler, DrivesToffoliSuffix) {
    Rng rng(68);
    for (int trial = 0; trial < 4; ++trial) {
        const size_t n = 3 + testing::uniform_index(rng, 4);
        const Circuit front = testing::random_clifford(rng, n, 40);
        const Circuit back = testing::random_product_front(rng, n, 30);
        Circuit full = front;
        full.gates.insert(full.gates.end(), back.gates.begin(), back.gates.end());
        full.measured = back.measured;
        const auto expected = marginal(run_statevector(full, Exec::Serial), full.measured);
        const AffineFormSampler sampler(run_clifford(front));
        const uint64_t shots = 100000;
        std::vector<uint64_t> counts(expected.size());
        std::mt19937_64 r(trial);
        for (uint64_t k = 0; k < shots; ++k) {
            ++counts[testing::pack(sample_classical_diagonal_suffix(sampler, back.gates, full.measured, r).bits)];
        }
        size_t cells = 0;
        std::vector<double> cleaned(expected);
        for (size_t a = 0; a < expected.size(); ++a) {
            // Oracle probabilities carry float noise; anything below 1e-12 is an exact zero.
            if (cleaned[a] < 1e-12) {
                cleaned[a] = 0;
                EXPECT_EQ(counts[a], 0u);
            }
            cells += cleaned[a] > 0;
        }
        if (cells > 1) {
            EXPECT_LT(testing::chi_square_statistic(counts, cleaned, shots), testing::chi_square_critical(cells - 1, 1e-6));
        }
    }
}

TEST(Shots, SerialAndParallelAgree) {
    Rng rng(69);
    const Circuit c = testing::random_ht(rng, 8, 5, 30);
    auto draw = [&](std::mt19937_64 &r) { return ht_weak_sample(c, r); };
    EXPECT_EQ(run_shots(2000, 9, Exec::Serial, draw), run_shots(2000, 9, Exec::Parallel, draw));
}

TEST(Shots, Uniform53Range) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 10000; ++k) {
        const double u = uniform53(rng);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    auto a = shot_rng(1, 2);
    auto b = shot_rng(1, 2);
    EXPECT_EQ(a(), b());
}

}  // namespace
}  // namespace affstab
