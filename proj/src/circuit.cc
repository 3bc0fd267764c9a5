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

#include "affstab/circuit.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cfloat>
#include <cmath>
#include <set>

#include "affstab/errors.h"

namespace affstab {

namespace {

struct KindInfo {
    GateKind kind;
    std::string_view name;
    size_t arity;
    bool angle;
};

constexpr std::array<KindInfo, 11> kKinds{{
    {GateKind::H, "h", 1, false},
    {GateKind::P, "p", 1, false},
    {GateKind::PDG, "pdg", 1, false},
    {GateKind::CNOT, "cnot", 2, false},
    {GateKind::X, "x", 1, false},
    {GateKind::Z, "z", 1, false},
    {GateKind::CZ, "cz", 2, false},
    {GateKind::TOFFOLI, "toffoli", 3, false},
    {GateKind::SWAP, "swap", 2, false},
    {GateKind::ZROT, "zrot", 1, true},
    {GateKind::CZROT, "czrot", 2, true},
}};

const KindInfo &info(GateKind kind) {
    return kKinds[static_cast<size_t>(kind)];
}

constexpr size_t kMaxQubits = size_t{1} << 20;

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) {
            ++k;
        }
        size_t start = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) {
            ++k;
        }
        if (k > start) {
            tokens.push_back(line.substr(start, k - start));
        }
    }
    return tokens;
}

template <typename T>
T parse_number(std::string_view token, size_t line, std::string_view what) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line, "expected " + std::string(what) + ", got '" + std::string(token) + "'");
    }
    return value;
}

size_t parse_qubit(std::string_view token, size_t line, size_t n) {
    if (!token.empty() && token[0] == '-') {
        throw ParseError(line, "qubit index must be nonnegative: " + std::string(token));
    }
    auto q = parse_number<uint64_t>(token, line, "a qubit index");
    if (q >= n) {
        throw ParseError(line, "qubit index " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
    }
    return static_cast<size_t>(q);
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void check_distinct(std::span<const size_t> qubits, size_t line) {
    for (size_t i = 0; i < qubits.size(); ++i) {
        for (size_t j = i + 1; j < qubits.size(); ++j) {
            if (qubits[i] == qubits[j]) {
                throw ParseError(line, "duplicate qubit " + std::to_string(qubits[i]) + " in one gate");
            }
        }
    }
}

bool is_clifford_kind(GateKind k) {
    switch (k) {
        case GateKind::H:
        case GateKind::P:
        case GateKind::PDG:
        case GateKind::CNOT:
        case GateKind::X:
        case GateKind::Z:
        case GateKind::CZ:
        case GateKind::SWAP:
            return true;
        default:
            return false;
    }
}

bool is_classical_kind(GateKind k) {
    return k == GateKind::X || k == GateKind::CNOT || k == GateKind::TOFFOLI || k == GateKind::SWAP;
}

bool is_diagonal_kind(GateKind k) {
    switch (k) {
        case GateKind::P:
        case GateKind::PDG:
        case GateKind::Z:
        case GateKind::CZ:
        case GateKind::ZROT:
        case GateKind::CZROT:
            return true;
        default:
            return false;
    }
}

}  // namespace

std::string_view mnemonic(GateKind kind) {
    return info(kind).name;
}

size_t arity(GateKind kind) {
    return info(kind).arity;
}

bool has_angle(GateKind kind) {
    return info(kind).angle;
}

std::string_view to_string(CircuitClass c) {
    switch (c) {
        case CircuitClass::CliffordOnly:
            return "CliffordOnly";
        case CircuitClass::HTForm:
            return "HTForm";
        case CircuitClass::ProductFrontClassicalDiagonal:
            return "ProductFrontClassicalDiagonal";
        case CircuitClass::OracleOnly:
            return "OracleOnly";
    }
    return "?";
}

void Circuit::validate() const {
    if (n_qubits == 0) {
        throw UsageError("circuit must have at least one qubit");
    }
    if (prep) {
        if (prep->size() != n_qubits) {
            throw UsageError("prep must list one amplitude pair per qubit");
        }
        for (const auto &qp : *prep) {
            double norm2 = std::norm(qp.a) + std::norm(qp.b);
            if (std::abs(norm2 - 1.0) > 1e-12) {
                throw UsageError("prep amplitudes are not normalized");
            }
        }
    }
    for (const auto &g : gates) {
        if (g.kind == GateKind::SWAP) {
            throw UsageError("swap must be expanded into cnot gates");
        }
        if (g.qubits.size() != arity(g.kind)) {
            throw UsageError("gate " + std::string(mnemonic(g.kind)) + " has wrong arity");
        }
        for (size_t i = 0; i < g.qubits.size(); ++i) {
            if (g.qubits[i] >= n_qubits) {
                throw UsageError("gate qubit out of range");
            }
            for (size_t j = i + 1; j < g.qubits.size(); ++j) {
                if (g.qubits[i] == g.qubits[j]) {
                    throw UsageError("gate acts twice on one qubit");
                }
            }
        }
        if (has_angle(g.kind) != g.angle.has_value()) {
            throw UsageError("angle present on wrong gate kind");
        }
        if (g.angle && g.angle->den <= 0) {
            throw UsageError("angle denominator must be positive");
        }
    }
    if (measured.empty()) {
        throw UsageError("at least one qubit must be measured");
    }
    std::set<size_t> seen;
    for (size_t q : measured) {
        if (q >= n_qubits || !seen.insert(q).second) {
            throw UsageError("measured qubits must be distinct and in range");
        }
    }
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_header = false;
    bool have_gate = false;
    bool have_measure = false;
    std::vector<bool> prepped;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tok = tokenize(line);
        if (tok.empty()) {
            continue;
        }
        const std::string_view head = tok[0];
        if (!have_header) {
            if (head != "qubits" || tok.size() != 2) {
                throw ParseError(line_no, "first statement must be 'qubits N'");
            }
            auto n = parse_number<uint64_t>(tok[1], line_no, "a qubit count");
            if (n == 0 || n > kMaxQubits) {
                throw ParseError(line_no, "qubit count must be between 1 and " + std::to_string(kMaxQubits));
            }
            c.n_qubits = static_cast<size_t>(n);
            prepped.assign(c.n_qubits, false);
            have_header = true;
            continue;
        }
        if (have_measure) {
            throw ParseError(line_no, "'measure' must be the last statement");
        }
        if (head == "qubits") {
            throw ParseError(line_no, "duplicate 'qubits' header");
        }
        if (head == "measure") {
            if (tok.size() < 2) {
                throw ParseError(line_no, "'measure' needs at least one qubit");
            }
            c.measured.clear();
            for (size_t k = 1; k < tok.size(); ++k) {
                c.measured.push_back(parse_qubit(tok[k], line_no, c.n_qubits));
            }
            check_distinct(c.measured, line_no);
            have_measure = true;
            continue;
        }
        if (head == "prep") {
            if (have_gate) {
                throw ParseError(line_no, "'prep' must come before any gate");
            }
            if (tok.size() != 6) {
                throw ParseError(line_no, "'prep' expects: prep q a_re a_im b_re b_im");
            }
            size_t q = parse_qubit(tok[1], line_no, c.n_qubits);
            if (prepped[q]) {
                throw ParseError(line_no, "qubit " + std::to_string(q) + " prepared twice");
            }
            prepped[q] = true;
            std::array<double, 4> v{};
            for (size_t k = 0; k < 4; ++k) {
                v[k] = parse_number<double>(tok[2 + k], line_no, "a real number");
            }
            QubitPrep qp{{v[0], v[1]}, {v[2], v[3]}};
            double norm2 = std::norm(qp.a) + std::norm(qp.b);
            if (!(std::abs(norm2 - 1.0) <= 1e-12)) {
                throw ParseError(line_no, "prep amplitudes for qubit " + std::to_string(q) + " are not normalized");
            }
            // Values already normalized to working precision are left untouched so that
            // re-parsing emitted text reproduces them bit for bit.
            if (std::abs(norm2 - 1.0) > 8 * DBL_EPSILON) {
                double s = std::sqrt(norm2);
                qp.a /= s;
                qp.b /= s;
            }
            if (!c.prep) {
                c.prep.emplace(c.n_qubits);
            }
            (*c.prep)[q] = qp;
            continue;
        }
        auto it = std::find_if(kKinds.begin(), kKinds.end(), [&](const KindInfo &k) { return k.name == head; });
        if (it == kKinds.end()) {
            throw ParseError(line_no, "unknown statement '" + std::string(head) + "'");
        }
        const size_t expected = 1 + it->arity + (it->angle ? 2 : 0);
        if (tok.size() != expected) {
            throw ParseError(line_no, "'" + std::string(head) + "' expects " + std::to_string(expected - 1) + " arguments, got " +
                                          std::to_string(tok.size() - 1));
        }
        Gate g{it->kind, {}, {}};
        for (size_t k = 0; k < it->arity; ++k) {
            g.qubits.push_back(parse_qubit(tok[1 + k], line_no, c.n_qubits));
        }
        check_distinct(g.qubits, line_no);
        if (it->angle) {
            Angle a{parse_number<int64_t>(tok[1 + it->arity], line_no, "an integer numerator"),
                    parse_number<int64_t>(tok[2 + it->arity], line_no, "an integer denominator")};
            if (a.den <= 0) {
                throw ParseError(line_no, "angle denominator must be positive");
            }
            g.angle = a;
        }
        have_gate = true;
        if (g.kind == GateKind::SWAP) {
            size_t a = g.qubits[0], b = g.qubits[1];
            c.gates.push_back(Gate::cnot(a, b));
            c.gates.push_back(Gate::cnot(b, a));
            c.gates.push_back(Gate::cnot(a, b));
        } else {
            c.gates.push_back(std::move(g));
        }
    }
    if (!have_header) {
        throw ParseError(line_no, "missing 'qubits N' header");
    }
    return c;
}

std::string emit_gate(const Gate &g) {
    std::string out(mnemonic(g.kind));
    for (size_t q : g.qubits) {
        out += ' ';
        out += std::to_string(q);
    }
    if (g.angle) {
        out += ' ' + std::to_string(g.angle->num) + ' ' + std::to_string(g.angle->den);
    }
    return out;
}

namespace {

std::string emit_measure(std::span<const size_t> measured) {
    std::string out = "measure";
    for (size_t q : measured) {
        out += ' ' + std::to_string(q);
    }
    return out + '\n';
}

}  // namespace

std::string emit_circuit(const Circuit &c) {
    std::string out = "qubits " + std::to_string(c.n_qubits) + '\n';
    if (c.prep) {
        for (size_t q = 0; q < c.prep->size(); ++q) {
            const auto &qp = (*c.prep)[q];
            out += "prep " + std::to_string(q) + ' ' + format_double(qp.a.real()) + ' ' + format_double(qp.a.imag()) + ' ' +
                   format_double(qp.b.real()) + ' ' + format_double(qp.b.imag()) + '\n';
        }
    }
    for (const auto &g : c.gates) {
        out += emit_gate(g) + '\n';
    }
    return out + emit_measure(c.measured);
}

std::string emit_sections(size_t n_qubits, std::span<const GateSection> sections, std::span<const size_t> measured) {
    std::string out = "qubits " + std::to_string(n_qubits) + '\n';
    for (const auto &section : sections) {
        out += "# " + section.label + '\n';
        for (const auto &g : section.gates) {
            out += emit_gate(g) + '\n';
        }
    }
    return out + emit_measure(measured);
}

size_t hadamard_prefix_length(const Circuit &c) {
    size_t k = 0;
    while (k < c.gates.size() && c.gates[k].kind == GateKind::H) {
        ++k;
    }
    return k;
}

bool has_ht_shape(const Circuit &c) {
    if (c.prep) {
        return false;
    }
    const auto &gates = c.gates;
    const size_t prefix = hadamard_prefix_length(c);
    std::set<size_t> hadamard_qubits;
    for (size_t k = 0; k < prefix; ++k) {
        // A repeated H cancels, so the round would no longer be a uniform superposition.
        if (!hadamard_qubits.insert(gates[k].qubits[0]).second) {
            return false;
        }
    }
    return std::all_of(gates.begin() + static_cast<std::ptrdiff_t>(prefix), gates.end(),
                       [](const Gate &g) { return is_classical_kind(g.kind); });
}

CircuitClass classify(const Circuit &c) {
    const auto &gates = c.gates;
    if (!c.prep && std::all_of(gates.begin(), gates.end(), [](const Gate &g) { return is_clifford_kind(g.kind); })) {
        return CircuitClass::CliffordOnly;
    }
    if (has_ht_shape(c)) {
        return CircuitClass::HTForm;
    }
    if (std::all_of(gates.begin(), gates.end(), [](const Gate &g) { return is_classical_kind(g.kind) || is_diagonal_kind(g.kind); })) {
        return CircuitClass::ProductFrontClassicalDiagonal;
    }
    return CircuitClass::OracleOnly;
}

}  // namespace affstab
