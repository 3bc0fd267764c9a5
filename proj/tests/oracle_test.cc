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

#include "affstab/errors.h"
#include "affstab/oracle.h"
#include "support/test_support.h"

namespace affstab {
namespace {

using testing::Rng;

StateVector random_state(Rng &rng, size_t n) {
    std::normal_distribution<double> gauss;
    std::vector<std::complex<double>> amps(size_t{1} << n);
    double norm = 0;
    for (auto &a : amps) {
        a = {gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return StateVector::from_amplitudes(n, amps);
}

double max_diff(const StateVector &a, const StateVector &b) {
    double worst = 0;
    for (size_t k = 0; k < a.amps.size(); ++k) {
        worst = std::max(worst, std::abs(a.amps[k] - b.amps[k]));
    }
    return worst;
}

TEST(Oracle, BasisStateAndBounds) {
    const auto v = StateVector::basis_state(3, 5);
    EXPECT_EQ(v.amps[5], std::complex<double>(1.0));
    EXPECT_DOUBLE_EQ(v.norm2(), 1.0);
    EXPECT_THROW(StateVector::basis_state(kMaxOracleQubits + 1, 0), CapacityError);
    EXPECT_THROW(StateVector::from_amplitudes(2, std::vector<std::complex<double>>(3)), UsageError);
}

TEST(Oracle, QubitOrderIsLittleEndian) {
    StateVector v = StateVector::basis_state(3, 0);
    apply_gate(v, Gate::x(1));
    EXPECT_EQ(v.amps[2], std::complex<double>(1.0));
    apply_gate(v, Gate::cnot(1, 2));
    EXPECT_EQ(v.amps[6], std::complex<double>(1.0));
    const std::vector<size_t> subset{2, 0};
    const auto marg = marginal(v, subset);
    EXPECT_DOUBLE_EQ(marg[1], 1.0);
    const auto dist = distribution(v, subset);
    ASSERT_EQ(dist.size(), 1u);
    EXPECT_EQ(dist.begin()->first, "10");
}

TEST(Oracle, UnitarityAndInvolutions) {
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const size_t n = 3 + testing::uniform_index(rng, 4);
        const StateVector start = random_state(rng, n);
        const std::vector<Gate> involutions{Gate::h(0), Gate::x(1), Gate::z(2), Gate::cz(0, 2), Gate::cnot(2, 1),
                                            Gate::swap(0, 1), Gate::toffoli(0, 1, 2)};
        for (const auto &g : involutions) {
            StateVector v = start;
            apply_gate(v, g, Exec::Serial);
            EXPECT_NEAR(v.norm2(), 1.0, 1e-9);
            apply_gate(v, g, Exec::Serial);
            EXPECT_LT(max_diff(v, start), 1e-12) << emit_gate(g);
        }
        StateVector v = start;
        for (int k = 0; k < 4; ++k) {
            apply_gate(v, Gate::p(1), Exec::Serial);
        }
        EXPECT_LT(max_diff(v, start), 1e-12);
        v = start;
        apply_gate(v, Gate::p(1), Exec::Serial);
        apply_gate(v, Gate::pdg(1), Exec::Serial);
        EXPECT_LT(max_diff(v, start), 1e-12);
        v = start;
        apply_gate(v, Gate::zrot(0, 1, 3), Exec::Serial);
        apply_gate(v, Gate::zrot(0, -1, 3), Exec::Serial);
        apply_gate(v, Gate::czrot(0, 2, 5, 7), Exec::Serial);
        apply_gate(v, Gate::czrot(2, 0, 9, 7), Exec::Serial);
        EXPECT_LT(max_diff(v, start), 1e-12);
    }
}

TEST(Oracle, RationalAnglesMatchNamedGates) {
    Rng rng(72);
    const StateVector start = random_state(rng, 2);
    StateVector a = start, b = start;
    apply_gate(a, Gate::zrot(1, 1, 2));
    apply_gate(b, Gate::p(1));
    EXPECT_LT(max_diff(a, b), 1e-15);
    apply_gate(a, Gate::czrot(0, 1, 1, 1));
    apply_gate(b, Gate::cz(0, 1));
    EXPECT_LT(max_diff(a, b), 1e-15);
    EXPECT_EQ(rational_phase(3, 2), std::complex<double>(0, -1));
    EXPECT_EQ(rational_phase(-4, 4), std::complex<double>(-1, 0));
}

TEST(Oracle, SerialAndParallelAgree) {
    Rng rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = testing::random_any(rng, 12 + testing::uniform_index(rng, 3), 60);
        const auto s = run_statevector(c, Exec::Serial);
        const auto p = run_statevector(c, Exec::Parallel);
        EXPECT_LT(max_diff(s, p), 1e-15);
    }
}

TEST(Oracle, EqualUpToPhase) {
    Rng rng(74);
    const StateVector a = random_state(rng, 3);
    StateVector b = a;
    for (auto &x : b.amps) {
        x *= std::polar(1.0, 0.7);
    }
    EXPECT_TRUE(equal_up_to_phase(a, b, 1e-12));
    b.amps[0] += 1e-6;
    EXPECT_FALSE(equal_up_to_phase(a, b, 1e-9));
}

TEST(Oracle, ProportionalAsOperators) {
    Circuit a, b;
    a.n_qubits = b.n_qubits = 2;
    a.gates = {Gate::h(0), Gate::h(0)};
    EXPECT_TRUE(proportional_as_operators(a, b, 1e-12));
    a.gates = {Gate::p(0), Gate::p(0)};
    b.gates = {Gate::z(0)};
    EXPECT_TRUE(proportional_as_operators(a, b, 1e-12));
    b.gates = {Gate::x(0)};
    EXPECT_FALSE(proportional_as_operators(a, b, 1e-12));
    // Equal on |00> is not enough.
    a.gates = {Gate::cz(0, 1)};
    b.gates = {};
    EXPECT_FALSE(proportional_as_operators(a, b, 1e-12, Exec::Serial));
    a.gates = {Gate::swap(0, 1)};
    b.gates = {Gate::cnot(0, 1), Gate::cnot(1, 0), Gate::cnot(0, 1)};
    EXPECT_TRUE(proportional_as_operators(a, b, 1e-12));
}

TEST(Oracle, PrepIsApplied) {
    Circuit c;
    c.n_qubits = 2;
    c.prep = std::vector<QubitPrep>{QubitPrep{{0.6, 0}, {0.8, 0}}, QubitPrep{}};
    const auto v = run_statevector(c);
    EXPECT_NEAR(v.amps[0].real(), 0.6, 1e-15);
    EXPECT_NEAR(v.amps[1].real(), 0.8, 1e-15);
}

}  // namespace
}  // namespace affstab
