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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace affstab {

enum class GateKind : uint8_t { H, P, PDG, CNOT, X, Z, CZ, TOFFOLI, SWAP, ZROT, CZROT };

/// Phase e^{i*pi*num/den} applied to the all-ones branch of a diagonal gate.
struct Angle {
    int64_t num = 0;
    int64_t den = 1;
    bool operator==(const Angle &) const = default;
};

struct Gate {
    GateKind kind;
    std::vector<size_t> qubits;
    std::optional<Angle> angle;

    static Gate h(size_t q) {
        return {GateKind::H, {q}, {}};
    }
    static Gate p(size_t q) {
        return {GateKind::P, {q}, {}};
    }
    static Gate pdg(size_t q) {
        return {GateKind::PDG, {q}, {}};
    }
    static Gate x(size_t q) {
        return {GateKind::X, {q}, {}};
    }
    static Gate z(size_t q) {
        return {GateKind::Z, {q}, {}};
    }
    static Gate cnot(size_t control, size_t target) {
        return {GateKind::CNOT, {control, target}, {}};
    }
    static Gate cz(size_t a, size_t b) {
        return {GateKind::CZ, {a, b}, {}};
    }
    static Gate swap(size_t a, size_t b) {
        return {GateKind::SWAP, {a, b}, {}};
    }
    static Gate toffoli(size_t c1, size_t c2, size_t target) {
        return {GateKind::TOFFOLI, {c1, c2, target}, {}};
    }
    static Gate zrot(size_t q, int64_t num, int64_t den) {
        return {GateKind::ZROT, {q}, Angle{num, den}};
    }
    static Gate czrot(size_t a, size_t b, int64_t num, int64_t den) {
        return {GateKind::CZROT, {a, b}, Angle{num, den}};
    }

    bool operator==(const Gate &) const = default;
};

std::string_view mnemonic(GateKind kind);
size_t arity(GateKind kind);
bool has_angle(GateKind kind);

/// Single-qubit input state a|0> + b|1>.
struct QubitPrep {
    std::complex<double> a{1.0, 0.0};
    std::complex<double> b{0.0, 0.0};
    bool operator==(const QubitPrep &) const = default;
};

struct Circuit {
    size_t n_qubits = 1;
    /// Absent means every qubit starts in |0>. When present it has one entry per qubit.
    std::optional<std::vector<QubitPrep>> prep;
    std::vector<Gate> gates;
    std::vector<size_t> measured{0};

    /// Throws UsageError if any structural invariant is violated. SWAP is not a valid IR gate:
    /// the parser expands it into three CNOTs.
    void validate() const;

    bool operator==(const Circuit &) const = default;
};

enum class CircuitClass { CliffordOnly, HTForm, ProductFrontClassicalDiagonal, OracleOnly };

std::string_view to_string(CircuitClass c);

/// Parses the line-oriented circuit format. Throws ParseError carrying a 1-based line number.
Circuit parse_circuit(std::string_view text);

/// Canonical text; parse_circuit(emit_circuit(c)) == c for every valid circuit.
std::string emit_circuit(const Circuit &c);

std::string emit_gate(const Gate &g);

/// A labelled run of gates, written after a "# label" comment line.
struct GateSection {
    std::string label;
    std::vector<Gate> gates;
};

std::string emit_sections(size_t n_qubits, std::span<const GateSection> sections, std::span<const size_t> measured);

/// Most specific simulation class, checked in the order CliffordOnly, HTForm,
/// ProductFrontClassicalDiagonal, OracleOnly.
CircuitClass classify(const Circuit &c);

/// No prep, a prefix of H gates on distinct qubits, then only classical gates. Clifford circuits
/// of this shape classify as CliffordOnly but are still valid HT input.
bool has_ht_shape(const Circuit &c);

/// Number of leading H gates (the Hadamard round of an HT circuit).
size_t hadamard_prefix_length(const Circuit &c);

}  // namespace affstab
