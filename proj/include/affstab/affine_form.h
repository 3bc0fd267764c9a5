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
#include <optional>
#include <string>
#include <vector>

#include "affstab/circuit.h"
#include "affstab/gf2.h"

namespace affstab {

/// Affine function u -> coeffs.u + constant over GF(2).
struct LinForm {
    BitVector coeffs;
    bool constant = false;

    LinForm() = default;
    explicit LinForm(size_t m) : coeffs(m) {
    }
    LinForm(BitVector c, bool k) : coeffs(std::move(c)), constant(k) {
    }
    static LinForm variable(size_t m, size_t k) {
        return LinForm(BitVector::unit(m, k), false);
    }

    size_t vars() const {
        return coeffs.size();
    }
    bool eval(const BitVector &u) const {
        return coeffs.dot(u) ^ constant;
    }
    bool is_zero() const {
        return !constant && !coeffs.any();
    }
    LinForm &operator^=(const LinForm &other) {
        coeffs ^= other.coeffs;
        constant ^= other.constant;
        return *this;
    }

    bool operator==(const LinForm &) const = default;
};

/// Quadratic function sum_{i<j} c_ij u_i u_j + lin.u + constant over GF(2).
///
/// Only the strict upper triangle of `cross` is ever set; u_i^2 = u_i terms live in `lin`.
class QuadForm {
   public:
    QuadForm() = default;
    explicit QuadForm(size_t m) : cross_(m, m), lin(m) {
    }

    size_t vars() const {
        return lin.size();
    }
    bool cross_term(size_t i, size_t j) const;
    /// Adds u_i u_j. For i == j this adds u_i to the linear part.
    void toggle_term(size_t i, size_t j);
    const BitMatrix &cross() const {
        return cross_;
    }

    bool eval(const BitVector &u) const;
    QuadForm &operator^=(const QuadForm &other);
    QuadForm &operator^=(const LinForm &other);

    bool operator==(const QuadForm &) const = default;

   private:
    BitMatrix cross_;

   public:
    BitVector lin;
    bool constant = false;
};

/// Pointwise product of two affine functions, expanded with u_i^2 = u_i.
QuadForm product(const LinForm &a, const LinForm &b);

/// Returns u' -> f(Q u' + shift), where Q maps the new variables onto the old ones.
LinForm substitute(const LinForm &f, const BitMatrix &q, const BitVector &shift);
QuadForm substitute(const QuadForm &f, const BitMatrix &q, const BitVector &shift);

/// Result of summing i^{l(u)} (-1)^{q(u)} over one variable w:
///
///     sum_w i^l (-1)^q  =  c * i^{l'} (-1)^{q'} * [constraint(rest) == 0]
///
/// for a constant c independent of the remaining variables. With l = lambda*w + l~ and
/// q = w*g + h, the lambda = 0 case yields the constraint g = 0 and phases (l~, h); the
/// lambda = 1 case uses 1 + i(-1)^a = (1+i)(-i)^a with a = g + l~, giving l' = g and
/// q' = h + g + l~*g with no constraint.
struct SummedPhase {
    LinForm l;
    QuadForm q;
    /// Set when the sum is zero unless constraint(rest) == 0. Never the zero function.
    std::optional<LinForm> constraint;
    /// The constraint is the constant 1, so the sum is identically zero.
    bool vanishes = false;
};

/// Sums over variable `dead`; the outputs are over the remaining variables in their original order.
SummedPhase sum_out_variable(const LinForm &l, const QuadForm &q, size_t dead);

/// Stabilizer state  2^{-m/2} sum_u i^{l(u)} (-1)^{q(u)} |R u + t>,  up to global phase.
///
/// R is n x m with full column rank, so the support {R u + t} has exactly 2^m elements and the
/// parameters u index it bijectively. Phases are kept over u rather than over basis states.
class AffineForm {
   public:
    /// |0...0>. Throws UsageError for n == 0.
    static AffineForm zero_state(size_t n);

    /// Raw constructor; checks dimensions only. Intermediate states (e.g. a dead parameter
    /// before summation) are allowed to be rank deficient.
    static AffineForm from_parts(BitMatrix r, BitVector t, LinForm l, QuadForm q);

    size_t num_qubits() const {
        return r_.rows();
    }
    /// The support has 2^dimension() elements.
    size_t dimension() const {
        return r_.cols();
    }
    const BitMatrix &basis() const {
        return r_;
    }
    const BitVector &shift() const {
        return t_;
    }
    const LinForm &i_phase() const {
        return l_;
    }
    const QuadForm &sign_phase() const {
        return q_;
    }

    /// Value of qubit k as an affine function of the parameters.
    LinForm qubit_form(size_t k) const;

    /// Applies any Clifford gate (H, P, PDG, CNOT, X, Z, CZ, SWAP).
    void apply(const Gate &g);
    /// Basis-preserving gates: P, X, Z, CZ, CNOT. Throws UsageError for other kinds.
    void apply_phase_family(const Gate &g);
    void apply_h(size_t k);

    /// Removes parameter `dead`, whose column of R must be zero, by summing over it.
    /// Any resulting linear constraint is solved and the parameter space reparametrized.
    void sum_out_var(size_t dead);

    std::complex<double> amplitude(const BitVector &x) const;
    /// All 2^n amplitudes, basis index bit k = qubit k. Requires n <= 14.
    std::vector<std::complex<double>> dense_amplitudes() const;

    /// Throws InternalError unless R has full column rank and all dimensions agree.
    void check_invariants() const;

    std::string debug_string() const;

    bool operator==(const AffineForm &) const = default;

   private:
    void fold_constants();

    BitMatrix r_;
    BitVector t_;
    LinForm l_;
    QuadForm q_;
};

/// Folds the gates of a CliffordOnly circuit over |0...0>. Throws ClassificationError otherwise.
AffineForm run_clifford(const Circuit &c);

}  // namespace affstab
