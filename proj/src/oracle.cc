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

#include "affstab/oracle.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "affstab/errors.h"

namespace affstab {

namespace {

using cd = std::complex<double>;

inline uint64_t insert_zero(uint64_t j, uint64_t mask) {
    uint64_t low = j & (mask - 1);
    return ((j ^ low) << 1) | low;
}

void check_gate(const StateVector &v, const Gate &g) {
    for (size_t q : g.qubits) {
        if (q >= v.n) {
            throw UsageError("gate qubit out of range for state vector");
        }
    }
}

template <typename F>
void apply_diagonal(StateVector &v, Exec exec, F &&factor_for) {
    cd *amps = v.amps.data();
    for_each_index(static_cast<int64_t>(v.amps.size()), exec, [&](int64_t i) { amps[i] *= factor_for(static_cast<uint64_t>(i)); });
}

// Swaps amplitude i with i ^ flip for every i with (i & when) == when and (i & flip) == 0.
void apply_permutation(StateVector &v, Exec exec, uint64_t when, uint64_t flip) {
    cd *amps = v.amps.data();
    for_each_index(static_cast<int64_t>(v.amps.size()), exec, [&](int64_t j) {
        auto i = static_cast<uint64_t>(j);
        if ((i & when) == when && (i & flip) == 0) {
            std::swap(amps[i], amps[i | flip]);
        }
    });
}

}  // namespace

StateVector StateVector::basis_state(size_t n, uint64_t index) {
    if (n > kMaxOracleQubits) {
        throw CapacityError("oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
    }
    StateVector v{n, std::vector<cd>(size_t{1} << n)};
    v.amps.at(index) = 1.0;
    return v;
}

StateVector StateVector::from_amplitudes(size_t n, std::vector<cd> amps) {
    if (amps.size() != (size_t{1} << n)) {
        throw UsageError("amplitude count must be 2^n");
    }
    return StateVector{n, std::move(amps)};
}

double StateVector::norm2() const {
    double total = 0;
    for (const auto &a : amps) {
        total += std::norm(a);
    }
    return total;
}

cd rational_phase(int64_t num, int64_t den) {
    if (den <= 0) {
        throw UsageError("angle denominator must be positive");
    }
    // Reduce num/den modulo 2 before touching floating point.
    const int64_t period = 2 * den;
    int64_t r = num % period;
    if (r < 0) {
        r += period;
    }
    if ((2 * r) % den == 0) {
        switch ((2 * r) / den) {
            case 0:
                return {1, 0};
            case 1:
                return {0, 1};
            case 2:
                return {-1, 0};
            default:
                return {0, -1};
        }
    }
    const double theta = std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(theta), std::sin(theta)};
}

void apply_gate(StateVector &v, const Gate &g, Exec exec) {
    check_gate(v, g);
    const auto bit = [&](size_t k) { return uint64_t{1} << g.qubits[k]; };
    switch (g.kind) {
        case GateKind::H: {
            const uint64_t mask = bit(0);
            const double s = std::numbers::sqrt2 / 2;
            cd *amps = v.amps.data();
            for_each_index(static_cast<int64_t>(v.amps.size() / 2), exec, [&](int64_t j) {
                uint64_t i0 = insert_zero(static_cast<uint64_t>(j), mask);
                cd a = amps[i0], b = amps[i0 | mask];
                amps[i0] = (a + b) * s;
                amps[i0 | mask] = (a - b) * s;
            });
            return;
        }
        case GateKind::P:
        case GateKind::PDG:
        case GateKind::Z: {
            const uint64_t mask = bit(0);
            const cd f = g.kind == GateKind::P ? cd{0, 1} : g.kind == GateKind::PDG ? cd{0, -1} : cd{-1, 0};
            apply_diagonal(v, exec, [&](uint64_t i) { return (i & mask) ? f : cd{1, 0}; });
            return;
        }
        case GateKind::CZ: {
            const uint64_t mask = bit(0) | bit(1);
            apply_diagonal(v, exec, [&](uint64_t i) { return (i & mask) == mask ? cd{-1, 0} : cd{1, 0}; });
            return;
        }
        case GateKind::ZROT:
        case GateKind::CZROT: {
            uint64_t mask = 0;
            for (size_t k = 0; k < g.qubits.size(); ++k) {
                mask |= bit(k);
            }
            const cd f = rational_phase(g.angle.value().num, g.angle.value().den);
            apply_diagonal(v, exec, [&](uint64_t i) { return (i & mask) == mask ? f : cd{1, 0}; });
            return;
        }
        case GateKind::X:
            apply_permutation(v, exec, 0, bit(0));
            return;
        case GateKind::CNOT:
            apply_permutation(v, exec, bit(0), bit(1));
            return;
        case GateKind::TOFFOLI:
            apply_permutation(v, exec, bit(0) | bit(1), bit(2));
            return;
        case GateKind::SWAP: {
            const uint64_t a = bit(0), b = bit(1);
            cd *amps = v.amps.data();
            for_each_index(static_cast<int64_t>(v.amps.size()), exec, [&](int64_t j) {
                auto i = static_cast<uint64_t>(j);
                if ((i & a) && !(i & b)) {
                    std::swap(amps[i], amps[(i ^ a) | b]);
                }
            });
            return;
        }
    }
}

void run_gates(StateVector &v, std::span<const Gate> gates, Exec exec) {
    for (const auto &g : gates) {
        apply_gate(v, g, exec);
    }
}

StateVector run_statevector(const Circuit &c, Exec exec) {
    if (c.n_qubits > kMaxOracleQubits) {
        throw CapacityError("oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits, circuit has " +
                            std::to_string(c.n_qubits));
    }
    StateVector v = StateVector::basis_state(c.n_qubits, 0);
    if (c.prep) {
        const auto &prep = *c.prep;
        for_each_index(static_cast<int64_t>(v.amps.size()), exec, [&](int64_t j) {
            cd amp{1, 0};
            for (size_t k = 0; k < c.n_qubits; ++k) {
                amp *= ((j >> k) & 1) ? prep[k].b : prep[k].a;
            }
            v.amps[static_cast<size_t>(j)] = amp;
        });
    }
    run_gates(v, c.gates, exec);
    return v;
}

std::vector<double> marginal(const StateVector &v, std::span<const size_t> subset) {
    for (size_t q : subset) {
        if (q >= v.n) {
            throw UsageError("marginal: qubit out of range");
        }
    }
    std::vector<double> out(size_t{1} << subset.size(), 0.0);
    for (uint64_t i = 0; i < v.amps.size(); ++i) {
        uint64_t key = 0;
        for (size_t k = 0; k < subset.size(); ++k) {
            key |= ((i >> subset[k]) & 1) << k;
        }
        out[key] += std::norm(v.amps[i]);
    }
    return out;
}

std::map<std::string, double> distribution(const StateVector &v, std::span<const size_t> subset) {
    auto probs = marginal(v, subset);
    std::map<std::string, double> out;
    for (uint64_t key = 0; key < probs.size(); ++key) {
        if (probs[key] == 0.0) {
            continue;
        }
        std::string bits(subset.size(), '0');
        for (size_t k = 0; k < subset.size(); ++k) {
            if ((key >> k) & 1) {
                bits[k] = '1';
            }
        }
        out[bits] = probs[key];
    }
    return out;
}

bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tol) {
    if (a.n != b.n || a.amps.size() != b.amps.size()) {
        throw UsageError("equal_up_to_phase: qubit counts differ");
    }
    size_t best = 0;
    for (size_t i = 1; i < b.amps.size(); ++i) {
        if (std::abs(b.amps[i]) > std::abs(b.amps[best])) {
            best = i;
        }
    }
    if (std::abs(b.amps[best]) == 0.0) {
        return std::all_of(a.amps.begin(), a.amps.end(), [&](const cd &x) { return std::abs(x) <= tol; });
    }
    cd lambda = a.amps[best] / b.amps[best];
    if (std::abs(std::abs(lambda) - 1.0) > tol) {
        return false;
    }
    lambda /= std::abs(lambda);
    for (size_t i = 0; i < a.amps.size(); ++i) {
        if (std::abs(a.amps[i] - lambda * b.amps[i]) > tol) {
            return false;
        }
    }
    return true;
}

bool proportional_as_operators(const Circuit &c1, const Circuit &c2, double tol, Exec exec) {
    if (c1.n_qubits != c2.n_qubits) {
        throw UsageError("proportional_as_operators: circuits act on different widths");
    }
    if (c1.prep || c2.prep) {
        throw UsageError("proportional_as_operators: prep is not part of the operator");
    }
    const size_t n = c1.n_qubits;
    if (n > kMaxOperatorQubits) {
        throw CapacityError("operator comparison supports at most " + std::to_string(kMaxOperatorQubits) + " qubits");
    }
    const auto column = [&](const Circuit &c, uint64_t a) {
        StateVector v = StateVector::basis_state(n, a);
        run_gates(v, c.gates, Exec::Serial);
        return v;
    };
    // One lambda, fixed from the first column, must serve every column.
    StateVector first1 = column(c1, 0), first2 = column(c2, 0);
    size_t best = 0;
    for (size_t i = 1; i < first2.amps.size(); ++i) {
        if (std::abs(first2.amps[i]) > std::abs(first2.amps[best])) {
            best = i;
        }
    }
    cd lambda = first1.amps[best] / first2.amps[best];
    if (std::abs(std::abs(lambda) - 1.0) > tol) {
        return false;
    }
    lambda /= std::abs(lambda);
    const uint64_t bad = count_if_index(int64_t{1} << n, exec, [&](int64_t a) {
        StateVector v1 = column(c1, static_cast<uint64_t>(a));
        StateVector v2 = column(c2, static_cast<uint64_t>(a));
        for (size_t i = 0; i < v1.amps.size(); ++i) {
            if (std::abs(v1.amps[i] - lambda * v2.amps[i]) > tol) {
                return true;
            }
        }
        return false;
    }, 2);
    return bad == 0;
}

}  // namespace affstab
