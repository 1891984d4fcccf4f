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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stabcleanse {

/// Dense GF(2) matrix with rows packed into 64-bit words.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);
    static BitMatrix identity(size_t n);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t words_per_row() const {
        return stride_;
    }

    bool get(size_t r, size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(size_t r, size_t c, bool v) {
        uint64_t &w = data_[r * stride_ + (c >> 6)];
        uint64_t mask = uint64_t{1} << (c & 63);
        w = v ? (w | mask) : (w & ~mask);
    }
    std::span<uint64_t> row(size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<const uint64_t> row(size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }
    /// row(dst) ^= row(src)
    void xor_row(size_t dst, size_t src);
    void swap_rows(size_t a, size_t b);

    /// this * rhs over GF(2).
    BitMatrix operator*(const BitMatrix &rhs) const;
    BitMatrix transposed() const;
    /// Inverse of a lower-triangular matrix with unit diagonal.
    BitMatrix inverse_unit_lower() const;
    size_t rank() const;

    bool operator==(const BitMatrix &) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

}  // namespace stabcleanse
