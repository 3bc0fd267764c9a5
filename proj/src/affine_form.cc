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

#include "affstab/affine_form.h"

#include <cmath>
#include <sstream>

#include "affstab/errors.h"

namespace affstab {

namespace {

LinForm extend(const LinForm &f, size_t extra) {
    LinForm out(f.vars() + extra);
    for (size_t k = 0; k < f.vars(); ++k) {
        out.coeffs.set(k, f.coeffs[k]);
    }
    out.constant = f.constant;
    return out;
}

QuadForm extend(const QuadForm &f, size_t extra) {
    const size_t m = f.vars();
    QuadForm out(m + extra);
    for (size_t i = 0; i < m; ++i) {
        out.lin.set(i, f.lin[i]);
        for (size_t j = i + 1; j < m; ++j) {
            if (f.cross_term(i, j)) {
                out.toggle_term(i, j);
            }
        }
    }
    out.constant = f.constant;
    return out;
}

// Inclusion of the variables other than `dead` into the full variable space, as an
// (m x (m-1)) substitution matrix.
BitMatrix drop_matrix(size_t m, size_t dead) {
    BitMatrix q(m, m - 1);
    for (size_t k = 0, c = 0; k < m; ++k) {
        if (k != dead) {
            q.set(k, c++, true);
        }
    }
    return q;
}

std::complex<double> i_power(unsigned k) {
    switch (k & 3) {
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

}  // namespace

bool QuadForm::cross_term(size_t i, size_t j) const {
    if (i == j) {
        return false;
    }
    return i < j ? cross_.get(i, j) : cross_.get(j, i);
}

void QuadForm::toggle_term(size_t i, size_t j) {
    if (i == j) {
        lin.flip(i);
        return;
    }
    if (i > j) {
        std::swap(i, j);
    }
    cross_.set(i, j, !cross_.get(i, j));
}

bool QuadForm::eval(const BitVector &u) const {
    bool acc = constant ^ lin.dot(u);
    for (size_t i = 0; i < vars(); ++i) {
        if (u[i]) {
            acc ^= cross_.row(i).dot(u);
        }
    }
    return acc;
}

QuadForm &QuadForm::operator^=(const QuadForm &other) {
    if (other.vars() != vars()) {
        throw UsageError("QuadForm variable count mismatch");
    }
    for (size_t i = 0; i < vars(); ++i) {
        cross_.set_row(i, cross_.row(i) ^ other.cross_.row(i));
    }
    lin ^= other.lin;
    constant ^= other.constant;
    return *this;
}

QuadForm &QuadForm::operator^=(const LinForm &other) {
    lin ^= other.coeffs;
    constant ^= other.constant;
    return *this;
}

QuadForm product(const LinForm &a, const LinForm &b) {
    if (a.vars() != b.vars()) {
        throw UsageError("LinForm variable count mismatch in product");
    }
    const size_t m = a.vars();
    QuadForm out(m);
    for (size_t i = 0; i < m; ++i) {
        if (!a.coeffs[i] && !b.coeffs[i]) {
            continue;
        }
        for (size_t j = i + 1; j < m; ++j) {
            if ((a.coeffs[i] & b.coeffs[j]) ^ (a.coeffs[j] & b.coeffs[i])) {
                out.toggle_term(i, j);
            }
        }
        if ((a.coeffs[i] & b.coeffs[i]) ^ (a.constant & b.coeffs[i]) ^ (b.constant & a.coeffs[i])) {
            out.lin.flip(i);
        }
    }
    out.constant = a.constant & b.constant;
    return out;
}

LinForm substitute(const LinForm &f, const BitMatrix &q, const BitVector &shift) {
    if (q.rows() != f.vars() || shift.size() != f.vars()) {
        throw UsageError("substitution has wrong dimensions");
    }
    LinForm out(q.cols());
    for (size_t k = 0; k < f.vars(); ++k) {
        if (f.coeffs[k]) {
            out.coeffs ^= q.row(k);
        }
    }
    out.constant = f.constant ^ f.coeffs.dot(shift);
    return out;
}

QuadForm substitute(const QuadForm &f, const BitMatrix &q, const BitVector &shift) {
    const size_t m = f.vars();
    if (q.rows() != m || shift.size() != m) {
        throw UsageError("substitution has wrong dimensions");
    }
    // Absorb the shift: (w_i + s_i)(w_j + s_j) = w_i w_j + s_j w_i + s_i w_j + s_i s_j.
    BitVector lin = f.lin;
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            if (f.cross_term(i, j)) {
                if (shift[j]) {
                    lin.flip(i);
                }
                if (shift[i]) {
                    lin.flip(j);
                }
            }
        }
    }
    // q(w) = w^T U w with U upper triangular (diagonal = linear part); then w = Q u'.
    BitMatrix upper(m, m);
    for (size_t i = 0; i < m; ++i) {
        upper.set(i, i, lin[i]);
        for (size_t j = i + 1; j < m; ++j) {
            upper.set(i, j, f.cross_term(i, j));
        }
    }
    BitMatrix n = q.transposed() * (upper * q);
    QuadForm out(q.cols());
    for (size_t a = 0; a < q.cols(); ++a) {
        if (n.get(a, a)) {
            out.lin.flip(a);
        }
        for (size_t b = a + 1; b < q.cols(); ++b) {
            if (n.get(a, b) ^ n.get(b, a)) {
                out.toggle_term(a, b);
            }
        }
    }
    out.constant = f.eval(shift);
    return out;
}

SummedPhase sum_out_variable(const LinForm &l, const QuadForm &q, size_t dead) {
    const size_t m = l.vars();
    if (q.vars() != m || dead >= m) {
        throw UsageError("sum_out_variable: bad variable index or mismatched forms");
    }
    const bool lambda = l.coeffs[dead];

    // l = lambda*w + l~,  q = w*g + h.
    LinForm l_rest = l;
    l_rest.coeffs.set(dead, false);
    LinForm g(m);
    g.constant = q.lin[dead];
    QuadForm h(m);
    h.constant = q.constant;
    for (size_t i = 0; i < m; ++i) {
        if (i == dead) {
            continue;
        }
        g.coeffs.set(i, q.cross_term(dead, i));
        h.lin.set(i, q.lin[i]);
        for (size_t j = i + 1; j < m; ++j) {
            if (j != dead && q.cross_term(i, j)) {
                h.toggle_term(i, j);
            }
        }
    }

    const BitMatrix drop = drop_matrix(m, dead);
    const BitVector zero(m);
    SummedPhase out;
    if (!lambda) {
        // sum_w (-1)^{w g} = 2 [g == 0].
        out.l = substitute(l_rest, drop, zero);
        out.q = substitute(h, drop, zero);
        LinForm c = substitute(g, drop, zero);
        if (c.coeffs.any()) {
            out.constraint = std::move(c);
        } else if (c.constant) {
            out.vanishes = true;
        }
        return out;
    }
    // sum_w i^{w xor l~} (-1)^{w g + h}  =  i^{l~} (-1)^h (1 + i (-1)^{g + l~})
    //   = (1+i) i^{l~} (-i)^{a} (-1)^h  with a = g + l~, and i^{l~} (-i)^a = i^{l~ xor a} (-1)^{l~ a + a}.
    // Since l~ xor a = g and l~ a + a = l~ g + g (mod 2), the phase is i^g (-1)^{h + g + l~ g}.
    QuadForm q_new = h;
    q_new ^= g;
    q_new ^= product(l_rest, g);
    out.l = substitute(g, drop, zero);
    out.q = substitute(q_new, drop, zero);
    return out;
}

AffineForm AffineForm::zero_state(size_t n) {
    if (n == 0) {
        throw UsageError("zero_state: need at least one qubit");
    }
    return from_parts(BitMatrix(n, 0), BitVector(n), LinForm(0), QuadForm(0));
}

AffineForm AffineForm::from_parts(BitMatrix r, BitVector t, LinForm l, QuadForm q) {
    if (t.size() != r.rows() || l.vars() != r.cols() || q.vars() != r.cols()) {
        throw UsageError("AffineForm::from_parts: inconsistent dimensions");
    }
    AffineForm s;
    s.r_ = std::move(r);
    s.t_ = std::move(t);
    s.l_ = std::move(l);
    s.q_ = std::move(q);
    return s;
}

LinForm AffineForm::qubit_form(size_t k) const {
    return LinForm(r_.row(k), t_[k]);
}

void AffineForm::apply(const Gate &g) {
    switch (g.kind) {
        case GateKind::H:
            apply_h(g.qubits.at(0));
            return;
        case GateKind::PDG:
            for (int k = 0; k < 3; ++k) {
                apply_phase_family(Gate::p(g.qubits.at(0)));
            }
            return;
        case GateKind::SWAP: {
            size_t a = g.qubits.at(0), b = g.qubits.at(1);
            apply_phase_family(Gate::cnot(a, b));
            apply_phase_family(Gate::cnot(b, a));
            apply_phase_family(Gate::cnot(a, b));
            return;
        }
        default:
            apply_phase_family(g);
    }
}

void AffineForm::apply_phase_family(const Gate &g) {
    for (size_t q : g.qubits) {
        if (q >= num_qubits()) {
            throw UsageError("gate qubit out of range");
        }
    }
    switch (g.kind) {
        case GateKind::P: {
            // i^l i^x = (-1)^{l x} i^{l xor x}.
            LinForm xk = qubit_form(g.qubits.at(0));
            q_ ^= product(l_, xk);
            l_ ^= xk;
            break;
        }
        case GateKind::X:
            t_.flip(g.qubits.at(0));
            break;
        case GateKind::Z:
            q_ ^= qubit_form(g.qubits.at(0));
            break;
        case GateKind::CZ:
            q_ ^= product(qubit_form(g.qubits.at(0)), qubit_form(g.qubits.at(1)));
            break;
        case GateKind::CNOT: {
            size_t c = g.qubits.at(0), d = g.qubits.at(1);
            if (c == d) {
                throw UsageError("cnot control equals target");
            }
            r_.xor_row(d, c);
            if (t_[c]) {
                t_.flip(d);
            }
            break;
        }
        default:
            throw UsageError("apply_phase_family: unsupported gate '" + std::string(mnemonic(g.kind)) + "'");
    }
    fold_constants();
}

void AffineForm::apply_h(size_t k) {
    if (k >= num_qubits()) {
        throw UsageError("apply_h: qubit out of range");
    }
    const size_t n = num_qubits();
    const size_t m = dimension();

    std::vector<size_t> other_rows;
    for (size_t r = 0; r < n; ++r) {
        if (r != k) {
            other_rows.push_back(r);
        }
    }
    const BitMatrix r_bar = r_.select_rows(other_rows);

    // Fresh variable v (index m): the phase gains (-1)^{v x_k(u)} and the ket's qubit k becomes v.
    const LinForm xk = extend(qubit_form(k), 1);
    l_ = extend(l_, 1);
    q_ = extend(q_, 1);
    q_ ^= product(LinForm::variable(m + 1, m), xk);
    r_ = r_.with_appended_column(BitVector(n));
    r_.set_row(k, BitVector::unit(m + 1, m));
    t_.set(k, false);

    if (rank(r_bar) == m) {
        fold_constants();
        return;
    }

    // R-bar lost one rank: its kernel is spanned by a single y. Substituting u = Q u', where Q is
    // the identity with column p replaced by y (p = lowest set bit of y), zeroes column p of R.
    auto kernel = kernel_basis(r_bar);
    if (kernel.size() != 1) {
        throw InternalError("apply_h: rank of R-bar dropped by more than one");
    }
    const BitVector &y = kernel[0];
    const size_t p = *y.first_set();
    BitMatrix q = BitMatrix::identity(m + 1);
    for (size_t i = 0; i < m; ++i) {
        q.set(i, p, y[i]);
    }
    const BitVector zero(m + 1);
    l_ = substitute(l_, q, zero);
    q_ = substitute(q_, q, zero);
    r_ = r_ * q;
    sum_out_var(p);
}

void AffineForm::sum_out_var(size_t dead) {
    const size_t m = dimension();
    if (dead >= m) {
        throw UsageError("sum_out_var: parameter index out of range");
    }
    if (r_.column(dead).any()) {
        throw InternalError("sum_out_var: parameter still appears in the ket");
    }
    SummedPhase summed = sum_out_variable(l_, q_, dead);
    if (summed.vanishes) {
        throw InternalError("sum_out_var: state vanished, which unitary evolution forbids");
    }
    std::vector<size_t> live;
    for (size_t k = 0; k < m; ++k) {
        if (k != dead) {
            live.push_back(k);
        }
    }
    r_ = r_.select_columns(live);
    l_ = std::move(summed.l);
    q_ = std::move(summed.q);

    if (summed.constraint) {
        // Restrict to {u : c.u = c0}, parametrized as u = K u'' + s.
        const LinForm &c = *summed.constraint;
        BitMatrix row = BitMatrix::from_rows(std::vector<BitVector>{c.coeffs}, c.vars());
        auto solved = solve_affine(row, BitVector::from_u64(1, c.constant));
        if (!solved.consistent) {
            throw InternalError("sum_out_var: nonconstant constraint reported inconsistent");
        }
        const BitVector &s = *solved.particular;
        BitMatrix kmat = BitMatrix::from_columns(solved.kernel_basis, c.vars());
        t_ ^= r_ * s;
        r_ = r_ * kmat;
        l_ = substitute(l_, kmat, s);
        q_ = substitute(q_, kmat, s);
    }
    fold_constants();
    check_invariants();
}

void AffineForm::fold_constants() {
    // i^{1 xor a} = i * i^a * (-1)^a, so the constant of l moves into q up to a global factor.
    if (l_.constant) {
        q_.lin ^= l_.coeffs;
        l_.constant = false;
    }
    q_.constant = false;
}

std::complex<double> AffineForm::amplitude(const BitVector &x) const {
    if (x.size() != num_qubits()) {
        throw UsageError("amplitude: basis string has wrong length");
    }
    auto solved = solve_affine(r_, x ^ t_);
    if (!solved.consistent) {
        return {0, 0};
    }
    const BitVector &u = *solved.particular;
    unsigned power = (l_.eval(u) ? 1u : 0u) + (q_.eval(u) ? 2u : 0u);
    return i_power(power) * std::pow(2.0, -0.5 * static_cast<double>(dimension()));
}

std::vector<std::complex<double>> AffineForm::dense_amplitudes() const {
    const size_t n = num_qubits();
    const size_t m = dimension();
    if (n > 14) {
        throw CapacityError("dense_amplitudes: at most 14 qubits");
    }
    std::vector<std::complex<double>> out(size_t{1} << n);
    std::vector<uint64_t> cols(m);
    for (size_t c = 0; c < m; ++c) {
        cols[c] = r_.column(c).to_u64();
    }
    const uint64_t t = t_.to_u64();
    const double norm = std::pow(2.0, -0.5 * static_cast<double>(m));
    for (uint64_t bits = 0; bits < (uint64_t{1} << m); ++bits) {
        BitVector u = BitVector::from_u64(m, bits);
        uint64_t x = t;
        for (size_t c = 0; c < m; ++c) {
            if ((bits >> c) & 1) {
                x ^= cols[c];
            }
        }
        unsigned power = (l_.eval(u) ? 1u : 0u) + (q_.eval(u) ? 2u : 0u);
        out[x] = i_power(power) * norm;
    }
    return out;
}

void AffineForm::check_invariants() const {
    if (t_.size() != r_.rows() || l_.vars() != r_.cols() || q_.vars() != r_.cols()) {
        throw InternalError("AffineForm: inconsistent dimensions");
    }
    if (rank(r_) != r_.cols()) {
        throw InternalError("AffineForm: R lost full column rank");
    }
}

std::string AffineForm::debug_string() const {
    std::ostringstream out;
    out << "R=" << r_.to_string() << ", t=" << t_.to_string() << ", l=" << l_.coeffs.to_string() << "+" << l_.constant
        << ", q=" << q_.cross().to_string() << "/" << q_.lin.to_string() << "+" << q_.constant;
    return out.str();
}

AffineForm run_clifford(const Circuit &c) {
    c.validate();
    if (classify(c) != CircuitClass::CliffordOnly) {
        throw ClassificationError("run_clifford: circuit is not Clifford-only (class " + std::string(to_string(classify(c))) + ")");
    }
    AffineForm s = AffineForm::zero_state(c.n_qubits);
    for (const auto &g : c.gates) {
        s.apply(g);
    }
    return s;
}

}  // namespace affstab
