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

#include "affstab/measure.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "affstab/errors.h"

namespace affstab {

namespace {

void check_subset(const AffineForm &s, std::span<const size_t> subset) {
    std::set<size_t> seen;
    for (size_t q : subset) {
        if (q >= s.num_qubits() || !seen.insert(q).second) {
            throw UsageError("measured qubits must be distinct and in range");
        }
    }
}

BitVector shift_on(const AffineForm &s, std::span<const size_t> subset) {
    BitVector out(subset.size());
    for (size_t i = 0; i < subset.size(); ++i) {
        out.set(i, s.shift()[subset[i]]);
    }
    return out;
}

}  // namespace

double DyadicProb::to_double() const {
    return zero ? 0.0 : std::ldexp(1.0, -static_cast<int>(gamma));
}

std::string DyadicProb::to_string() const {
    if (zero) {
        return "0";
    }
    return gamma == 0 ? "1" : "2^-" + std::to_string(gamma);
}

DyadicRational DyadicRational::from(DyadicProb p) {
    return p.zero ? DyadicRational{} : DyadicRational{1, p.gamma};
}

void DyadicRational::normalize() {
    if (numerator == 0) {
        exponent = 0;
        return;
    }
    while (exponent > 0 && (numerator & 1) == 0) {
        numerator >>= 1;
        --exponent;
    }
}

DyadicRational &DyadicRational::operator+=(const DyadicRational &other) {
    unsigned e = std::max(exponent, other.exponent);
    uint64_t a = numerator, b = other.numerator;
    unsigned shift_a = e - exponent, shift_b = e - other.exponent;
    if ((a && (shift_a >= 64 || std::bit_width(a) + shift_a > 63)) || (b && (shift_b >= 64 || std::bit_width(b) + shift_b > 63))) {
        throw CapacityError("dyadic sum exceeds 63-bit precision");
    }
    numerator = (a << shift_a) + (b << shift_b);
    exponent = e;
    normalize();
    return *this;
}

double DyadicRational::to_double() const {
    return std::ldexp(static_cast<double>(numerator), -static_cast<int>(exponent));
}

std::string DyadicRational::to_string() const {
    DyadicRational r = *this;
    r.normalize();
    if (r.numerator == 0) {
        return "0";
    }
    if (r.exponent == 0) {
        return std::to_string(r.numerator);
    }
    if (r.numerator == 1) {
        return "2^-" + std::to_string(r.exponent);
    }
    return std::to_string(r.numerator) + "/2^" + std::to_string(r.exponent);
}

DyadicProb strong_prob(const AffineForm &s, std::span<const size_t> subset, const BitVector &alpha) {
    check_subset(s, subset);
    if (alpha.size() != subset.size()) {
        throw UsageError("strong_prob: outcome length does not match measured subset");
    }
    BitMatrix rs = s.basis().select_rows(subset);
    auto solved = solve_affine(rs, alpha ^ shift_on(s, subset));
    if (!solved.consistent) {
        return DyadicProb{};
    }
    // 2^{m - rank} solutions out of 2^m parameter strings.
    return DyadicProb::power(static_cast<unsigned>(s.dimension() - solved.kernel_basis.size()));
}

Outcome weak_sample(const AffineForm &s, std::span<const size_t> subset, std::mt19937_64 &rng) {
    check_subset(s, subset);
    const size_t m = s.dimension();
    BitVector u(m);
    for (size_t base = 0; base < m; base += 64) {
        uint64_t word = rng();
        for (size_t k = base; k < std::min(m, base + 64); ++k) {
            u.set(k, (word >> (k - base)) & 1);
        }
    }
    Outcome out{std::vector<size_t>(subset.begin(), subset.end()), BitVector(subset.size())};
    for (size_t i = 0; i < subset.size(); ++i) {
        out.bits.set(i, s.basis().row(subset[i]).dot(u) ^ s.shift()[subset[i]]);
    }
    return out;
}

std::vector<std::pair<Outcome, DyadicProb>> enumerate_support(const AffineForm &s, std::span<const size_t> subset, uint64_t cap) {
    check_subset(s, subset);
    BitMatrix rs = s.basis().select_rows(subset);

    // A basis of the column space of R_S: the outcomes are t_S plus its span.
    std::vector<BitVector> image;
    std::vector<BitVector> reduced;
    for (size_t c = 0; c < rs.cols(); ++c) {
        BitVector col = rs.column(c);
        BitVector v = col;
        for (const auto &b : reduced) {
            if (v[*b.first_set()]) {
                v ^= b;
            }
        }
        if (v.any()) {
            // Keep `reduced` fully reduced on pivot positions.
            size_t pivot = *v.first_set();
            for (auto &b : reduced) {
                if (b[pivot]) {
                    b ^= v;
                }
            }
            reduced.push_back(v);
            image.push_back(col);
        }
    }
    const size_t r = image.size();
    if (r >= 63 || (uint64_t{1} << r) > cap) {
        throw CapacityError("enumerate_support: 2^" + std::to_string(r) + " outcomes exceed cap of " + std::to_string(cap));
    }
    const BitVector base = shift_on(s, subset);
    std::vector<std::pair<Outcome, DyadicProb>> out;
    out.reserve(size_t{1} << r);
    for (uint64_t combo = 0; combo < (uint64_t{1} << r); ++combo) {
        BitVector bits = base;
        for (size_t k = 0; k < r; ++k) {
            if ((combo >> k) & 1) {
                bits ^= image[k];
            }
        }
        out.push_back({Outcome{std::vector<size_t>(subset.begin(), subset.end()), std::move(bits)},
                       DyadicProb::power(static_cast<unsigned>(r))});
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first.bits.to_string() < b.first.bits.to_string(); });
    return out;
}

}  // namespace affstab
