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

#include "affstab/gf2.h"

#include <algorithm>
#include <bit>
#include <utility>

#include "affstab/errors.h"

namespace affstab {

namespace {

size_t num_words(size_t len) {
    return (len + 63) >> 6;
}

BitVector concat(const BitVector &a, const BitVector &b) {
    BitVector out(a.size() + b.size());
    for (size_t k = 0; k < a.size(); ++k) {
        out.set(k, a[k]);
    }
    for (size_t k = 0; k < b.size(); ++k) {
        out.set(a.size() + k, b[k]);
    }
    return out;
}

BitVector slice(const BitVector &v, size_t start, size_t len) {
    BitVector out(len);
    for (size_t k = 0; k < len; ++k) {
        out.set(k, v[start + k]);
    }
    return out;
}

// Gauss-Jordan over the first `pivot_cols` columns. Returns the pivot column of each leading row.
std::vector<size_t> reduce_rows(std::vector<BitVector> &rows, size_t pivot_cols) {
    std::vector<size_t> pivots;
    size_t next = 0;
    for (size_t c = 0; c < pivot_cols && next < rows.size(); ++c) {
        size_t p = next;
        while (p < rows.size() && !rows[p].get(c)) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[p]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r != next && rows[r].get(c)) {
                rows[r] ^= rows[next];
            }
        }
        pivots.push_back(c);
        ++next;
    }
    return pivots;
}

std::vector<BitVector> rows_of(const BitMatrix &m) {
    std::vector<BitVector> rows;
    rows.reserve(m.rows());
    for (size_t r = 0; r < m.rows(); ++r) {
        rows.push_back(m.row(r));
    }
    return rows;
}

std::vector<BitVector> kernel_from_reduced(const std::vector<BitVector> &rows, const std::vector<size_t> &pivots, size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<BitVector> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector v(cols);
        v.set(f, true);
        for (size_t i = 0; i < pivots.size(); ++i) {
            if (rows[i].get(f)) {
                v.set(pivots[i], true);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

BitVector::BitVector(size_t len) : len_(len), words_(num_words(len), 0) {
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector out(bits.size());
    for (size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1') {
            out.set(k, true);
        } else if (bits[k] != '0') {
            throw UsageError("bit string may only contain '0' and '1': " + std::string(bits));
        }
    }
    return out;
}

BitVector BitVector::from_u64(size_t len, uint64_t value) {
    BitVector out(len);
    if (len == 0) {
        return out;
    }
    if (len < 64) {
        value &= (uint64_t{1} << len) - 1;
    }
    out.words_[0] = value;
    return out;
}

BitVector BitVector::unit(size_t len, size_t k) {
    BitVector out(len);
    out.set(k, true);
    return out;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    if (other.len_ != len_) {
        throw UsageError("BitVector length mismatch in xor");
    }
    for (size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
    if (other.len_ != len_) {
        throw UsageError("BitVector length mismatch in and");
    }
    for (size_t w = 0; w < words_.size(); ++w) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

bool BitVector::dot(const BitVector &other) const {
    if (other.len_ != len_) {
        throw UsageError("BitVector length mismatch in dot product");
    }
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); ++w) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

bool BitVector::any() const {
    return std::any_of(words_.begin(), words_.end(), [](uint64_t w) { return w != 0; });
}

size_t BitVector::popcount() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

std::optional<size_t> BitVector::first_set() const {
    for (size_t w = 0; w < words_.size(); ++w) {
        if (words_[w]) {
            return (w << 6) + std::countr_zero(words_[w]);
        }
    }
    return std::nullopt;
}

uint64_t BitVector::to_u64() const {
    return words_.empty() ? 0 : words_[0];
}

std::string BitVector::to_string() const {
    std::string out(len_, '0');
    for (size_t k = 0; k < len_; ++k) {
        if (get(k)) {
            out[k] = '1';
        }
    }
    return out;
}

BitMatrix::BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix out(n, n);
    for (size_t k = 0; k < n; ++k) {
        out.set(k, k, true);
    }
    return out;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    size_t cols = rows.size() ? rows.begin()->size() : 0;
    BitMatrix out(rows.size(), cols);
    size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != cols) {
            throw UsageError("ragged BitMatrix literal");
        }
        size_t c = 0;
        for (int v : row) {
            out.set(r, c++, v & 1);
        }
        ++r;
    }
    return out;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows, size_t cols) {
    for (const auto &row : rows) {
        if (row.size() != cols) {
            throw UsageError("row length does not match column count");
        }
    }
    BitMatrix out;
    out.cols_ = cols;
    out.rows_ = std::move(rows);
    return out;
}

BitMatrix BitMatrix::from_columns(std::span<const BitVector> columns, size_t rows) {
    BitMatrix out(rows, columns.size());
    for (size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            throw UsageError("column length does not match row count");
        }
        for (size_t r = 0; r < rows; ++r) {
            out.set(r, c, columns[c][r]);
        }
    }
    return out;
}

void BitMatrix::set_row(size_t r, BitVector v) {
    if (v.size() != cols_) {
        throw UsageError("row length does not match column count");
    }
    rows_[r] = std::move(v);
}

BitVector BitMatrix::column(size_t c) const {
    BitVector out(rows());
    for (size_t r = 0; r < rows(); ++r) {
        out.set(r, get(r, c));
    }
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(cols_, rows());
    for (size_t r = 0; r < rows(); ++r) {
        for (size_t c = 0; c < cols_; ++c) {
            if (get(r, c)) {
                out.set(c, r, true);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::select_rows(std::span<const size_t> indices) const {
    BitMatrix out(indices.size(), cols_);
    for (size_t i = 0; i < indices.size(); ++i) {
        out.rows_[i] = rows_.at(indices[i]);
    }
    return out;
}

BitMatrix BitMatrix::select_columns(std::span<const size_t> indices) const {
    BitMatrix out(rows(), indices.size());
    for (size_t r = 0; r < rows(); ++r) {
        for (size_t i = 0; i < indices.size(); ++i) {
            out.set(r, i, get(r, indices[i]));
        }
    }
    return out;
}

BitMatrix BitMatrix::with_appended_column(const BitVector &column) const {
    if (column.size() != rows()) {
        throw UsageError("appended column has wrong length");
    }
    BitMatrix out(rows(), cols_ + 1);
    for (size_t r = 0; r < rows(); ++r) {
        for (size_t c = 0; c < cols_; ++c) {
            out.set(r, c, get(r, c));
        }
        out.set(r, cols_, column[r]);
    }
    return out;
}

BitVector BitMatrix::operator*(const BitVector &v) const {
    if (v.size() != cols_) {
        throw UsageError("matrix-vector dimension mismatch");
    }
    BitVector out(rows());
    for (size_t r = 0; r < rows(); ++r) {
        out.set(r, rows_[r].dot(v));
    }
    return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix &other) const {
    if (other.rows() != cols_) {
        throw UsageError("matrix-matrix dimension mismatch");
    }
    BitMatrix out(rows(), other.cols());
    for (size_t r = 0; r < rows(); ++r) {
        for (size_t k = 0; k < cols_; ++k) {
            if (get(r, k)) {
                out.rows_[r] ^= other.rows_[k];
            }
        }
    }
    return out;
}

std::string BitMatrix::to_string() const {
    std::string out = "[";
    for (size_t r = 0; r < rows(); ++r) {
        if (r) {
            out += ',';
        }
        out += rows_[r].to_string();
    }
    return out + "]";
}

size_t rank(const BitMatrix &m) {
    auto rows = rows_of(m);
    return reduce_rows(rows, m.cols()).size();
}

AffineSolveResult solve_affine(const BitMatrix &m, const BitVector &b) {
    if (b.size() != m.rows()) {
        throw UsageError("solve_affine: right-hand side has length " + std::to_string(b.size()) + " but matrix has " +
                         std::to_string(m.rows()) + " rows");
    }
    const size_t cols = m.cols();
    std::vector<BitVector> rows;
    rows.reserve(m.rows());
    for (size_t r = 0; r < m.rows(); ++r) {
        rows.push_back(concat(m.row(r), BitVector::from_u64(1, b[r])));
    }
    auto pivots = reduce_rows(rows, cols);

    AffineSolveResult result;
    result.kernel_basis = kernel_from_reduced(rows, pivots, cols);
    for (size_t r = pivots.size(); r < rows.size(); ++r) {
        if (rows[r].get(cols)) {
            return result;
        }
    }
    result.consistent = true;
    BitVector particular(cols);
    for (size_t i = 0; i < pivots.size(); ++i) {
        particular.set(pivots[i], rows[i].get(cols));
    }
    result.particular = std::move(particular);
    return result;
}

std::vector<BitVector> kernel_basis(const BitMatrix &m) {
    auto rows = rows_of(m);
    auto pivots = reduce_rows(rows, m.cols());
    return kernel_from_reduced(rows, pivots, m.cols());
}

BitMatrix left_inverse(const BitMatrix &m) {
    const size_t cols = m.cols();
    std::vector<BitVector> rows;
    rows.reserve(m.rows());
    for (size_t r = 0; r < m.rows(); ++r) {
        rows.push_back(concat(m.row(r), BitVector::unit(m.rows(), r)));
    }
    auto pivots = reduce_rows(rows, cols);
    if (pivots.size() != cols) {
        throw PreconditionError("left_inverse: matrix does not have full column rank");
    }
    BitMatrix out(cols, m.rows());
    for (size_t i = 0; i < cols; ++i) {
        out.set_row(i, slice(rows[i], cols, m.rows()));
    }
    return out;
}

std::vector<RowAddition> decompose_invertible(const BitMatrix &e) {
    if (e.rows() != e.cols()) {
        throw PreconditionError("decompose_invertible: matrix is not square");
    }
    const size_t n = e.rows();
    BitMatrix work = e;
    std::vector<RowAddition> reduction;
    for (size_t c = 0; c < n; ++c) {
        if (!work.get(c, c)) {
            size_t p = c + 1;
            while (p < n && !work.get(p, c)) {
                ++p;
            }
            if (p == n) {
                throw PreconditionError("decompose_invertible: matrix is singular");
            }
            work.xor_row(c, p);
            reduction.push_back({c, p});
        }
        for (size_t r = 0; r < n; ++r) {
            if (r != c && work.get(r, c)) {
                work.xor_row(r, c);
                reduction.push_back({r, c});
            }
        }
    }
    // Each addition is its own inverse, so E is the product of the reduction steps in order;
    // replaying them on I therefore runs in reverse.
    std::reverse(reduction.begin(), reduction.end());
    return reduction;
}

void apply_row_additions(BitMatrix &m, std::span<const RowAddition> ops) {
    for (const auto &op : ops) {
        m.xor_row(op.target, op.source);
    }
}

BitMatrix extend_to_invertible(const BitMatrix &m, size_t first) {
    size_t current = rank(m);
    if (current != m.cols()) {
        throw PreconditionError("extend_to_invertible: matrix does not have full column rank");
    }
    BitMatrix out = m;
    const size_t n = m.rows();
    for (size_t step = 0; step < n && out.cols() < n; ++step) {
        const size_t k = (first + step) % n;
        BitMatrix candidate = out.with_appended_column(BitVector::unit(n, k));
        if (rank(candidate) > current) {
            out = std::move(candidate);
            ++current;
        }
    }
    return out;
}

}  // namespace affstab
