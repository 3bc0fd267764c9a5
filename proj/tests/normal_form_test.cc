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

#include <set>

#include "affstab/affine_form.h"
#include "affstab/errors.h"
#include "affstab/normal_form.h"
#include "affstab/oracle.h"
#include "support/test_support.h"

namespace affstab {
namespace {

using testing::Rng;

PauliTerm random_pauli(Rng &rng, size_t n) {
    return PauliTerm{testing::random_bits(rng, n), testing::random_bits(rng, n), static_cast<uint8_t>(rng() & 3)};
}

Gate random_clifford_gate(Rng &rng, size_t n) {
    Circuit c = testing::random_clifford(rng, n, 1, true);
    return c.gates[0];
}

Circuit make(size_t n, std::vector<Gate> gates) {
    Circuit c;
    c.n_qubits = n;
    c.gates = std::move(gates);
    return c;
}

TEST(PauliTerm, MatrixOfXZ) {
    // X Z = -iY on one qubit: [[0,-1],[1,0]].
    const PauliTerm xz{BitVector::from_string("1"), BitVector::from_string("1"), 0};
    const auto m = testing::dense_pauli(xz);
    EXPECT_EQ(m[0][1], std::complex<double>(-1.0));
    EXPECT_EQ(m[1][0], std::complex<double>(1.0));
    EXPECT_FALSE(xz.is_hermitian());
    EXPECT_TRUE((PauliTerm{xz.xs, xz.zs, 1}).is_hermitian());
}

TEST(PauliTerm, HermiticityMatchesMatrix) {
    Rng rng(51);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_pauli(rng, 1 + testing::uniform_index(rng, 3));
        const auto m = testing::dense_pauli(p);
        EXPECT_EQ(p.is_hermitian(), testing::max_abs_diff(m, testing::adjoint(m)) < 1e-12) << p.to_string();
    }
}

TEST(PauliTerm, ProductMatchesMatrix) {
    Rng rng(52);
    for (int trial = 0; trial < 200; ++trial) {
        const size_t n = 1 + testing::uniform_index(rng, 3);
        const auto a = random_pauli(rng, n);
        const auto b = random_pauli(rng, n);
        const auto expected = testing::multiply(testing::dense_pauli(a), testing::dense_pauli(b));
        EXPECT_LT(testing::max_abs_diff(testing::dense_pauli(a * b), expected), 1e-12);
        const auto sq = a * a;
        EXPECT_FALSE(sq.xs.any());
        EXPECT_FALSE(sq.zs.any());
    }
}

TEST(ConjugatePauli, MatchesDenseConjugation) {
    Rng rng(53);
    for (int trial = 0; trial < 500; ++trial) {
        const size_t n = 2 + testing::uniform_index(rng, 2);
        const auto p = random_pauli(rng, n);
        const Gate g = trial % 10 == 0 ? Gate::swap(0, 1) : random_clifford_gate(rng, n);
        const auto u = testing::dense_unitary(n, trial % 10 == 0 ? std::vector<Gate>{Gate::cnot(0, 1), Gate::cnot(1, 0), Gate::cnot(0, 1)}
                                                                 : std::vector<Gate>{g});
        const auto expected = testing::multiply(testing::multiply(u, testing::dense_pauli(p)), testing::adjoint(u));
        const auto got = conjugate_pauli(p, g);
        ASSERT_LT(testing::max_abs_diff(testing::dense_pauli(got), expected), 1e-12)
            << emit_gate(g) << " on " << p.to_string();
        EXPECT_EQ(conjugate_pauli(got, inverse_gate(g)), p);
    }
}

TEST(ConjugatePauli, RejectsNonClifford) {
    const auto p = PauliTerm::x_on(3, 0);
    EXPECT_THROW(conjugate_pauli(p, Gate::toffoli(0, 1, 2)), UsageError);
}

TEST(ConjugatedGenerators, MatchDenseConjugation) {
    Rng rng(54);
    for (int trial = 0; trial < 40; ++trial) {
        const size_t n = 1 + testing::uniform_index(rng, 3);
        const Circuit c = testing::random_clifford(rng, n, 30, true);
        const auto u = testing::dense_unitary(n, c.gates);
        const auto sigmas = conjugated_generators(c);
        for (size_t i = 0; i < n; ++i) {
            const auto expected = testing::multiply(testing::multiply(u, testing::dense_pauli(PauliTerm::x_on(n, i))),
                                                    testing::adjoint(u));
            EXPECT_LT(testing::max_abs_diff(testing::dense_pauli(sigmas[i]), expected), 1e-12);
            EXPECT_TRUE(sigmas[i].is_hermitian());
        }
    }
}

bool in_round(GateKind k, int round) {
    switch (round) {
        case 1:
            return k == GateKind::H;
        case 2:
            return k == GateKind::CNOT || k == GateKind::X;
        default:
            return k == GateKind::P || k == GateKind::Z || k == GateKind::CZ;
    }
}

TEST(StatePrep, GhzExample) {
    const auto nf = synthesize_state_prep(run_clifford(make(2, {Gate::h(0), Gate::cnot(0, 1)})));
    EXPECT_EQ(nf.hadamard_set, std::vector<size_t>{0});
    EXPECT_EQ(nf.linear_layer, std::vector<Gate>{Gate::cnot(0, 1)});
    EXPECT_TRUE(nf.phase_layer.empty());
}

TEST(StatePrep, LayersHadamardCountAndReplay) {
    Rng rng(55);
    for (int trial = 0; trial < 300; ++trial) {
        const size_t n = 1 + testing::uniform_index(rng, 8);
        const Circuit c = testing::random_clifford(rng, n, testing::uniform_index(rng, 101), trial % 2);
        const auto s = run_clifford(c);
        const auto nf = synthesize_state_prep(s);
        EXPECT_EQ(nf.hadamard_set.size(), s.dimension());
        for (size_t k = 0; k < nf.hadamard_set.size(); ++k) {
            EXPECT_EQ(nf.hadamard_set[k], k);
        }
        for (const auto &g : nf.linear_layer) {
            EXPECT_TRUE(in_round(g.kind, 2));
        }
        for (const auto &g : nf.phase_layer) {
            EXPECT_TRUE(in_round(g.kind, 3));
        }
        StateVector v = StateVector::basis_state(n, 0);
        run_gates(v, nf.gates(), Exec::Serial);
        ASSERT_TRUE(equal_up_to_phase(v, testing::to_state(s), 1e-9)) << emit_circuit(c);
    }
}

TEST(StatePrep, HphIsStateEqualButNotOperatorEqual) {
    const Circuit hph = make(1, {Gate::h(0), Gate::p(0), Gate::h(0)});
    const auto nf = synthesize_state_prep(run_clifford(hph));
    const Circuit normal = make(1, nf.gates());
    EXPECT_TRUE(equal_up_to_phase(run_statevector(normal), run_statevector(hph), 1e-12));
    EXPECT_FALSE(proportional_as_operators(normal, hph, 1e-9));
}

TEST(StatePrep, EmitHasRoundMarkers) {
    const auto nf = synthesize_state_prep(run_clifford(make(2, {Gate::h(0), Gate::cnot(0, 1), Gate::p(1)})));
    const std::vector<size_t> measured{0, 1};
    const std::string text = emit_state_prep(nf, 2, measured);
    const auto r1 = text.find("# round 1");
    const auto r2 = text.find("# round 2");
    const auto r3 = text.find("# round 3");
    ASSERT_NE(r3, std::string::npos);
    EXPECT_LT(r1, r2);
    EXPECT_LT(r2, r3);
    EXPECT_EQ(parse_circuit(text).gates, nf.gates());
}

void expect_single_hadamard_layer(const OperatorNormalForm &nf) {
    for (const auto &g : nf.m1) {
        EXPECT_NE(g.kind, GateKind::H);
    }
    for (const auto &g : nf.m2) {
        EXPECT_NE(g.kind, GateKind::H);
    }
    EXPECT_EQ(std::set<size_t>(nf.hadamard_set.begin(), nf.hadamard_set.end()).size(), nf.hadamard_set.size());
}

TEST(Operator, ProportionalWithOneHadamardLayer) {
    Rng rng(56);
    for (int trial = 0; trial < 100; ++trial) {
        const size_t n = 1 + testing::uniform_index(rng, 5);
        const Circuit c = testing::random_clifford(rng, n, testing::uniform_index(rng, 60), trial % 2);
        const auto nf = decompose_operator(c);
        expect_single_hadamard_layer(nf);
        ASSERT_TRUE(proportional_as_operators(c, make(n, nf.gates()), 1e-9)) << emit_circuit(c);
    }
}

TEST(Operator, SingleXNeedsNot) {
    const auto nf = decompose_operator(make(1, {Gate::x(0)}));
    EXPECT_TRUE(proportional_as_operators(make(1, {Gate::x(0)}), make(1, nf.gates()), 1e-12));
}

TEST(Operator, EmitHasSectionMarkers) {
    const auto nf = decompose_operator(make(2, {Gate::h(0), Gate::cnot(0, 1)}));
    const std::vector<size_t> measured{0};
    const std::string text = emit_operator(nf, 2, measured);
    EXPECT_NE(text.find("# M1"), std::string::npos);
    EXPECT_NE(text.find("# H"), std::string::npos);
    EXPECT_NE(text.find("# M2"), std::string::npos);
    EXPECT_EQ(parse_circuit(text).gates, nf.gates());
}

TEST(Operator, RejectsNonClifford) {
    EXPECT_THROW(decompose_operator(make(3, {Gate::toffoli(0, 1, 2)})), ClassificationError);
}

}  // namespace
}  // namespace affstab
