// Copyright 2026 The stabcleanse Authors
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

#include "stabcleanse/bit_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabcleanse {

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m.set(k, k, true);
    }
    return m;
}

void BitMatrix::xor_row(size_t dst, size_t src) {
    uint64_t *d = data_.data() + dst * stride_;
    const uint64_t *s = data_.data() + src * stride_;
    for (size_t w = 0; w < stride_; w++) {
        d[w] ^= s[w];
    }
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(data_.begin() + a * stride_, data_.begin() + (a + 1) * stride_, data_.begin() + b * stride_);
}

BitMatrix BitMatrix::operator*(const BitMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("BitMatrix shape mismatch");
    }
    BitMatrix out(rows_, rhs.cols_);
    for (size_t r = 0; r < rows_; r++) {
        uint64_t *dst = out.data_.data() + r * out.stride_;
        for (size_t k = 0; k < cols_; k++) {
            if (get(r, k)) {
                const uint64_t *src = rhs.data_.data() + k * rhs.stride_;
                for (size_t w = 0; w < out.stride_; w++) {
                    dst[w] ^= src[w];
                }
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            if (get(r, c)) {
                out.set(c, r, true);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::inverse_unit_lower() const {
    // Forward substitution on [L | I].
    size_t n = rows_;
    BitMatrix work = *this;
    BitMatrix inv = identity(n);
    for (size_t col = 0; col < n; col++) {
        for (size_t r = col + 1; r < n; r++) {
            if (work.get(r, col)) {
                work.xor_row(r, col);
                inv.xor_row(r, col);
            }
        }
    }
    return inv;
}

size_t BitMatrix::rank() const {
    BitMatrix work = *this;
    size_t rank = 0;
    for (size_t c = 0; c < cols_ && rank < rows_; c++) {
        size_t pivot = rank;
        while (pivot < rows_ && !work.get(pivot, c)) {
            pivot++;
        }
        if (pivot == rows_) {
            continue;
        }
        work.swap_rows(rank, pivot);
        for (size_t r = rank + 1; r < rows_; r++) {
            if (work.get(r, c)) {
                work.xor_row(r, rank);
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace stabcleanse
