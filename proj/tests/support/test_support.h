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
#include <random>
#include <string>
#include <vector>

#include "affstab/affine_form.h"
#include "affstab/circuit.h"
#include "affstab/gf2.h"
#include "affstab/normal_form.h"
#include "affstab/oracle.h"

namespace affstab::testing {

using Rng = std::mt19937_64;
using Matrix = std::vector<std::vector<std::complex<double>>>;

size_t uniform_index(Rng &rng, size_t bound);

BitVector random_bits(Rng &rng, size_t len);
BitMatrix random_matrix(Rng &rng, size_t rows, size_t cols);
BitMatrix random_invertible(Rng &rng, size_t n);

/// Gates drawn uniformly from {H, P, CNOT, X, Z, CZ} (plus PDG when `with_pdg`).
Circuit random_clifford(Rng &rng, size_t n, size_t gates, bool with_pdg = false);

/// Hadamards on a random subset of size `m`, then classical gates.
Circuit random_ht(Rng &rng, size_t n, size_t m, size_t classical_gates);

/// Random product prep and a mix of classical and diagonal gates.
Circuit random_product_front(Rng &rng, size_t n, size_t gates);

/// Any gate kind except SWAP, optional prep, random measure list.
Circuit random_any(Rng &rng, size_t n, size_t gates);

Gate random_diagonal_gate(Rng &rng, size_t n);

StateVector to_state(const AffineForm &s);

/// Rank as log2 of the number of distinct row combinations (rows <= 16).
size_t brute_force_rank(const BitMatrix &m);

/// Dense 2^n x 2^n matrix of a gate list, built column by column with the oracle.
Matrix dense_unitary(size_t n, const std::vector<Gate> &gates);
Matrix dense_pauli(const PauliTerm &p);
Matrix multiply(const Matrix &a, const Matrix &b);
Matrix adjoint(const Matrix &a);
double max_abs_diff(const Matrix &a, const Matrix &b);

/// Critical value of the chi-square distribution with `dof` degrees of freedom at the given
/// upper-tail significance.
double chi_square_critical(size_t dof, double significance);

/// Pearson statistic of observed counts against expected probabilities (zero-probability
/// cells must have zero counts; they are skipped).
double chi_square_statistic(const std::vector<uint64_t> &observed, const std::vector<double> &expected, uint64_t shots);

/// Outcome bits packed so that bit k is bits[k].
uint64_t pack(const BitVector &bits);

}  // namespace affstab::testing
