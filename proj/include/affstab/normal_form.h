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
#include <span>
#include <string>
#include <vector>

#include "affstab/affine_form.h"
#include "affstab/circuit.h"
#include "affstab/gf2.h"

namespace affstab {

/// i^phase * X(xs) * Z(zs), with the X part to the left on every qubit.
/// The phase splits as (-1)^u_sign * i^v_sign.
struct PauliTerm {
    BitVector xs;
    BitVector zs;
    uint8_t phase = 0;

    static PauliTerm identity(size_t n);
    static PauliTerm x_on(size_t n, size_t k);
    static PauliTerm z_on(size_t n, size_t k);

    size_t num_qubits() const {
        return xs.size();
    }
    bool u_sign() const {
        return (phase >> 1) & 1;
    }
    unsigned v_sign() const {
        return phase & 1;
    }
    /// Hermitian iff phase + |xs & zs| is even (X Z = -iY on a qubit).
    bool is_hermitian() const;

    /// Uses X(x)Z(z) = (-1)^{x.z} Z(z)X(x) to restore X-before-Z order.
    PauliTerm operator*(const PauliTerm &other) const;

    std::string to_string() const;
    bool operator==(const PauliTerm &) const = default;
};

/// g P g^dagger, exact sign included. Supports H, P, PDG, CNOT, X, Z, CZ, SWAP.
PauliTerm conjugate_pauli(const PauliTerm &p, const Gate &g);

/// The inverse of a Clifford gate (P <-> PDG, everything else self-inverse).
Gate inverse_gate(const Gate &g);

/// sigma_i = C X_i C^dagger for each qubit i. Requires a CliffordOnly circuit.
std::vector<PauliTerm> conjugated_generators(const Circuit &c);

/// State-preparation normal form: H on hadamard_set, then CNOT/X, then P/Z/CZ.
struct NormalFormState {
    std::vector<size_t> hadamard_set;
    std::vector<Gate> linear_layer;
    std::vector<Gate> phase_layer;

    std::vector<Gate> gates() const;
};

/// Operator normal form C ~ M2 * H(hadamard_set) * M1 with basis-preserving M1, M2.
struct OperatorNormalForm {
    std::vector<Gate> m1;
    std::vector<size_t> hadamard_set;
    std::vector<Gate> m2;

    /// Gates in application order: m1, the Hadamard layer, then m2.
    std::vector<Gate> gates() const;
};

/// Three-round circuit that prepares `s` from |0...0> up to global phase.
NormalFormState synthesize_state_prep(const AffineForm &s);

/// Decomposes a CliffordOnly circuit as M2 * H * M1, proportional as an operator.
OperatorNormalForm decompose_operator(const Circuit &c);

/// Text with "# round 1/2/3" section markers.
std::string emit_state_prep(const NormalFormState &nf, size_t n_qubits, std::span<const size_t> measured);
/// Text with "# M1", "# H" and "# M2" section markers.
std::string emit_operator(const OperatorNormalForm &nf, size_t n_qubits, std::span<const size_t> measured);

}  // namespace affstab
