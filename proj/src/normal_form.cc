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

#include "affstab/normal_form.h"

#include <algorithm>

#include "affstab/errors.h"

namespace affstab {

PauliTerm PauliTerm::identity(size_t n) {
    return PauliTerm{BitVector(n), BitVector(n), 0};
}

PauliTerm PauliTerm::x_on(size_t n, size_t k) {
    PauliTerm p = identity(n);
    p.xs.set(k, true);
    return p;
}

PauliTerm PauliTerm::z_on(size_t n, size_t k) {
    PauliTerm p = identity(n);
    p.zs.set(k, true);
    return p;
}

bool PauliTerm::is_hermitian() const {
    BitVector y = xs;
    y &= zs;
    return ((phase + y.popcount()) & 1) == 0;
}

PauliTerm PauliTerm::operator*(const PauliTerm &other) const {
    PauliTerm out{xs ^ other.xs, zs ^ other.zs, 0};
    unsigned p = phase + other.phase + (zs.dot(other.xs) ? 2 : 0);
    out.phase = static_cast<uint8_t>(p & 3);
    return out;
}

std::string PauliTerm::to_string() const {
    static constexpr const char *kPhase[] = {"+", "+i", "-", "-i"};
    std::string out = kPhase[phase & 3];
    out += ' ';
    for (size_t k = 0; k < num_qubits(); ++k) {
        // Per-qubit factor X^x Z^z.
        out += xs[k] ? (zs[k] ? 'W' : 'X') : (zs[k] ? 'Z' : '_');
    }
    return out;
}

Gate inverse_gate(const Gate &g) {
    Gate out = g;
    if (g.kind == GateKind::P) {
        out.kind = GateKind::PDG;
    } else if (g.kind == GateKind::PDG) {
        out.kind = GateKind::P;
    }
    return out;
}

PauliTerm conjugate_pauli(const PauliTerm &p, const Gate &g) {
    for (size_t q : g.qubits) {
        if (q >= p.num_qubits()) {
            throw UsageError("conjugate_pauli: gate qubit out of range");
        }
    }
    PauliTerm out = p;
    unsigned phase = p.phase;
    switch (g.kind) {
        case GateKind::H: {
            size_t k = g.qubits[0];
            bool x = out.xs[k], z = out.zs[k];
            out.xs.set(k, z);
            out.zs.set(k, x);
            phase += (x && z) ? 2 : 0;
            break;
        }
        case GateKind::P:
        case GateKind::PDG: {
            size_t k = g.qubits[0];
            if (out.xs[k]) {
                phase += g.kind == GateKind::P ? 1 : 3;
                out.zs.flip(k);
            }
            break;
        }
        case GateKind::X:
            phase += out.zs[g.qubits[0]] ? 2 : 0;
            break;
        case GateKind::Z:
            phase += out.xs[g.qubits[0]] ? 2 : 0;
            break;
        case GateKind::CNOT: {
            size_t c = g.qubits[0], t = g.qubits[1];
            if (out.xs[c]) {
                out.xs.flip(t);
            }
            if (out.zs[t]) {
                out.zs.flip(c);
            }
            break;
        }
        case GateKind::CZ: {
            size_t a = g.qubits[0], b = g.qubits[1];
            bool xa = out.xs[a], xb = out.xs[b];
            phase += (xa && xb) ? 2 : 0;
            if (xb) {
                out.zs.flip(a);
            }
            if (xa) {
                out.zs.flip(b);
            }
            break;
        }
        case GateKind::SWAP: {
            size_t a = g.qubits[0], b = g.qubits[1];
            bool xa = out.xs[a], za = out.zs[a];
            out.xs.set(a, out.xs[b]);
            out.zs.set(a, out.zs[b]);
            out.xs.set(b, xa);
            out.zs.set(b, za);
            break;
        }
        default:
            throw UsageError("conjugate_pauli: gate '" + std::string(mnemonic(g.kind)) + "' is not Clifford");
    }
    out.phase = static_cast<uint8_t>(phase & 3);
    return out;
}

std::vector<PauliTerm> conjugated_generators(const Circuit &c) {
    c.validate();
    if (classify(c) != CircuitClass::CliffordOnly) {
        throw ClassificationError("conjugated_generators: circuit is not Clifford-only");
    }
    std::vector<PauliTerm> out;
    out.reserve(c.n_qubits);
    for (size_t i = 0; i < c.n_qubits; ++i) {
        PauliTerm p = PauliTerm::x_on(c.n_qubits, i);
        for (const auto &g : c.gates) {
            p = conjugate_pauli(p, g);
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Gate> NormalFormState::gates() const {
    std::vector<Gate> out;
    for (size_t q : hadamard_set) {
        out.push_back(Gate::h(q));
    }
    out.insert(out.end(), linear_layer.begin(), linear_layer.end());
    out.insert(out.end(), phase_layer.begin(), phase_layer.end());
    return out;
}

std::vector<Gate> OperatorNormalForm::gates() const {
    std::vector<Gate> out = m1;
    for (size_t q : hadamard_set) {
        out.push_back(Gate::h(q));
    }
    out.insert(out.end(), m2.begin(), m2.end());
    return out;
}

NormalFormState synthesize_state_prep(const AffineForm &s) {
    const size_t n = s.num_qubits();
    const size_t m = s.dimension();
    NormalFormState nf;
    for (size_t k = 0; k < m; ++k) {
        nf.hadamard_set.push_back(k);
    }

    // Round 2: the Hadamards leave sum_u |u, 0>; an invertible E whose first m columns are R
    // carries that to sum_u |R u>, and X gates add t. Filling the remaining columns with e_m, e_{m+1}, ...
    // where possible keeps E close to the identity.
    const BitMatrix e = extend_to_invertible(s.basis(), n == 0 ? 0 : m % n);
    for (const auto &op : decompose_invertible(e)) {
        nf.linear_layer.push_back(Gate::cnot(op.source, op.target));
    }
    for (size_t k = 0; k < n; ++k) {
        if (s.shift()[k]) {
            nf.linear_layer.push_back(Gate::x(k));
        }
    }

    // Round 3: phases as functions of x. On the support u = L(x + t) for any left inverse L of R,
    // and off the support the values do not matter.
    const BitMatrix left = left_inverse(s.basis());
    const BitVector offset = left * s.shift();
    LinForm l = substitute(s.i_phase(), left, offset);
    QuadForm q = substitute(s.sign_phase(), left, offset);
    if (l.constant) {
        q.lin ^= l.coeffs;
        l.constant = false;
    }
    // prod_k P^{d_k} gives i^{sum d_k x_k}; the mod-2 exponent needs an extra (-1)^{x_j x_k}
    // for every pair in the support of d.
    std::vector<size_t> support;
    for (size_t k = 0; k < n; ++k) {
        if (l.coeffs[k]) {
            nf.phase_layer.push_back(Gate::p(k));
            support.push_back(k);
        }
    }
    for (size_t a = 0; a < support.size(); ++a) {
        for (size_t b = a + 1; b < support.size(); ++b) {
            q.toggle_term(support[a], support[b]);
        }
    }
    for (size_t k = 0; k < n; ++k) {
        if (q.lin[k]) {
            nf.phase_layer.push_back(Gate::z(k));
        }
    }
    for (size_t j = 0; j < n; ++j) {
        for (size_t k = j + 1; k < n; ++k) {
            if (q.cross_term(j, k)) {
                nf.phase_layer.push_back(Gate::cz(j, k));
            }
        }
    }
    return nf;
}

OperatorNormalForm decompose_operator(const Circuit &c) {
    const AffineForm s = run_clifford(c);
    const NormalFormState nf = synthesize_state_prep(s);
    const size_t n = c.n_qubits;

    OperatorNormalForm out;
    out.hadamard_set = nf.hadamard_set;
    out.m2 = nf.linear_layer;
    out.m2.insert(out.m2.end(), nf.phase_layer.begin(), nf.phase_layer.end());

    // tau_i = H M^dagger sigma_i M H: conjugate by the circuit "M^dagger, then H".
    std::vector<Gate> undo;
    for (auto it = out.m2.rbegin(); it != out.m2.rend(); ++it) {
        undo.push_back(inverse_gate(*it));
    }
    for (size_t q : out.hadamard_set) {
        undo.push_back(Gate::h(q));
    }
    std::vector<PauliTerm> taus = conjugated_generators(c);
    for (auto &tau : taus) {
        for (const auto &g : undo) {
            tau = conjugate_pauli(tau, g);
        }
    }

    // tau(a)|0> = i^{sum a_i v_i} (-1)^{sum a_i u_i + sum_{i<j} a_i a_j T^i.R^j} |R a>.
    std::vector<BitVector> columns;
    for (size_t i = 0; i < n; ++i) {
        columns.push_back(taus[i].xs);
        if (taus[i].v_sign()) {
            out.m1.push_back(Gate::p(i));
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (taus[i].u_sign()) {
            out.m1.push_back(Gate::z(i));
        }
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (taus[i].zs.dot(taus[j].xs)) {
                out.m1.push_back(Gate::cz(i, j));
            }
        }
    }
    const BitMatrix r = BitMatrix::from_columns(columns, n);
    std::vector<RowAddition> ops;
    try {
        ops = decompose_invertible(r);
    } catch (const PreconditionError &) {
        throw InternalError("decompose_operator: X-part matrix is singular");
    }
    for (const auto &op : ops) {
        out.m1.push_back(Gate::cnot(op.source, op.target));
    }
    return out;
}

std::string emit_state_prep(const NormalFormState &nf, size_t n_qubits, std::span<const size_t> measured) {
    std::vector<Gate> hadamards;
    for (size_t q : nf.hadamard_set) {
        hadamards.push_back(Gate::h(q));
    }
    std::vector<GateSection> sections{{"round 1", hadamards}, {"round 2", nf.linear_layer}, {"round 3", nf.phase_layer}};
    return emit_sections(n_qubits, sections, measured);
}

std::string emit_operator(const OperatorNormalForm &nf, size_t n_qubits, std::span<const size_t> measured) {
    std::vector<Gate> hadamards;
    for (size_t q : nf.hadamard_set) {
        hadamards.push_back(Gate::h(q));
    }
    std::vector<GateSection> sections{{"M1", nf.m1}, {"H", hadamards}, {"M2", nf.m2}};
    return emit_sections(n_qubits, sections, measured);
}

}  // namespace affstab
