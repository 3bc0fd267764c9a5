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
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace affstab {

/// Fixed-length vector over GF(2), packed 64 bits per word.
///
/// Bits past `size()` in the last word are always zero, so defaulted equality is exact.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t len);

    /// Parses a string of '0'/'1' characters; index 0 is the first character.
    static BitVector from_string(std::string_view bits);
    static BitVector from_u64(size_t len, uint64_t value);
    static BitVector unit(size_t len, size_t k);

    size_t size() const {
        return len_;
    }
    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    bool operator[](size_t k) const {
        return get(k);
    }
    void set(size_t k, bool v) {
        uint64_t mask = uint64_t{1} << (k & 63);
        words_[k >> 6] = v ? (words_[k >> 6] | mask) : (words_[k >> 6] & ~mask);
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }

    BitVector &operator^=(const BitVector &other);
    friend BitVector operator^(BitVector a, const BitVector &b) {
        a ^= b;
        return a;
    }
    BitVector &operator&=(const BitVector &other);

    /// Inner product mod 2.
    bool dot(const BitVector &other) const;
    bool any() const;
    size_t popcount() const;
    std::optional<size_t> first_set() const;

    /// Low 64 bits as an integer (bit k of the result is entry k).
    uint64_t to_u64() const;
    std::string to_string() const;

    std::span<const uint64_t> words() const {
        return words_;
    }

    bool operator==(const BitVector &) const = default;

   private:
    size_t len_ = 0;
    std::vector<uint64_t> words_;
};

/// Dense row-major matrix over GF(2); each row is a BitVector of length cols().
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);

    static BitMatrix identity(size_t n);
    static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
    /// Every row must have length `cols`.
    static BitMatrix from_rows(std::vector<BitVector> rows, size_t cols);
    static BitMatrix from_columns(std::span<const BitVector> columns, size_t rows);

    size_t rows() const {
        return rows_.size();
    }
    size_t cols() const {
        return cols_;
    }
    bool get(size_t r, size_t c) const {
        return rows_[r].get(c);
    }
    void set(size_t r, size_t c, bool v) {
        rows_[r].set(c, v);
    }
    const BitVector &row(size_t r) const {
        return rows_[r];
    }
    /// Replaces a row; `v` must have length cols().
    void set_row(size_t r, BitVector v);
    void xor_row(size_t target, size_t source) {
        rows_[target] ^= rows_[source];
    }
    void swap_rows(size_t a, size_t b) {
        std::swap(rows_[a], rows_[b]);
    }

    BitVector column(size_t c) const;
    BitMatrix transposed() const;
    BitMatrix select_rows(std::span<const size_t> indices) const;
    BitMatrix select_columns(std::span<const size_t> indices) const;
    BitMatrix with_appended_column(const BitVector &column) const;

    BitVector operator*(const BitVector &v) const;
    BitMatrix operator*(const BitMatrix &other) const;

    std::string to_string() const;

    bool operator==(const BitMatrix &) const = default;

   private:
    size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

struct AffineSolveResult {
    bool consistent = false;
    /// Present iff consistent; free variables are set to zero.
    std::optional<BitVector> particular;
    std::vector<BitVector> kernel_basis;
};

/// Elementary row operation `row[target] ^= row[source]`. As a circuit this is CNOT(source -> target).
struct RowAddition {
    size_t target;
    size_t source;
    bool operator==(const RowAddition &) const = default;
};

size_t rank(const BitMatrix &m);

/// Solves m * x = b. Pivots are chosen left to right with the lowest available row, so the
/// output is a deterministic function of the input.
AffineSolveResult solve_affine(const BitMatrix &m, const BitVector &b);

std::vector<BitVector> kernel_basis(const BitMatrix &m);

/// Returns some L with L * m = I. Throws PreconditionError if m lacks full column rank.
BitMatrix left_inverse(const BitMatrix &m);

/// Returns additions that, replayed in order on the identity, produce `e`.
/// Throws PreconditionError unless `e` is square and invertible.
std::vector<RowAddition> decompose_invertible(const BitMatrix &e);

/// Applies the additions in order to `m`.
void apply_row_additions(BitMatrix &m, std::span<const RowAddition> ops);

/// Appends standard basis columns e_k to m until it is square and invertible, trying
/// k = first, first+1, ..., rows-1, 0, ..., first-1 and keeping each one that raises the rank.
/// m must have full column rank.
BitMatrix extend_to_invertible(const BitMatrix &m, size_t first = 0);

}  // namespace affstab
