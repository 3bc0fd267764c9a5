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

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "affstab/circuit.h"
#include "affstab/parallel.h"

namespace affstab {

inline constexpr size_t kMaxOracleQubits = 14;
inline constexpr size_t kMaxOperatorQubits = 10;

/// Dense state over n <= 14 qubits. Basis index bit k holds qubit k.
struct StateVector {
    size_t n = 0;
    std::vector<std::complex<double>> amps;

    static StateVector basis_state(size_t n, uint64_t index);
    static StateVector from_amplitudes(size_t n, std::vector<std::complex<double>> amps);
    double norm2() const;
};

/// Applies one gate in place. Diagonal angles are evaluated from the exact rational.
void apply_gate(StateVector &v, const Gate &g, Exec exec = Exec::Parallel);

/// Prepares c's product input (or |0...0>) and applies every gate.
/// Throws CapacityError above 14 qubits.
StateVector run_statevector(const Circuit &c, Exec exec = Exec::Parallel);

/// Runs only the gates of `c` on an arbitrary input.
void run_gates(StateVector &v, std::span<const Gate> gates, Exec exec = Exec::Parallel);

/// Marginal probabilities over `subset`, indexed so that bit i of the index is qubit subset[i].
std::vector<double> marginal(const StateVector &v, std::span<const size_t> subset);

/// Marginal as a map from bit strings (subset order) to probability; zero entries omitted.
std::map<std::string, double> distribution(const StateVector &v, std::span<const size_t> subset);

/// True iff a == lambda * b within `tol` (max norm) for a unit complex lambda, chosen from the
/// entry where |b| is largest.
bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tol);

/// True iff c1 == lambda * c2 as 2^n x 2^n matrices for one unit lambda. Compares the images of
/// every basis state. Prep lines are not part of the operator and must be absent.
bool proportional_as_operators(const Circuit &c1, const Circuit &c2, double tol, Exec exec = Exec::Parallel);

/// e^{i pi num/den}, exact at multiples of pi/2.
std::complex<double> rational_phase(int64_t num, int64_t den);

}  // namespace affstab
