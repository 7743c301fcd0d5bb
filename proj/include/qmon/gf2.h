// Copyright 2026 The qmon Authors
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

#ifndef QMON_GF2_H
#define QMON_GF2_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmon {

inline constexpr size_t kWordBits = 64;

inline constexpr size_t words_for_bits(size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
}

/// A fixed-length vector over GF(2), packed 64 entries per word.
///
/// Bits past `size()` in the final word are always zero, so word-level
/// comparisons and popcounts are exact.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t size) : size_(size), words_(words_for_bits(size), 0) {
    }

    /// Parses a string of '0'/'1' characters, first character is entry 0.
    static BitVec from_string(std::string_view bits);

    size_t size() const {
        return size_;
    }
    size_t num_words() const {
        return words_.size();
    }

    bool get(size_t k) const {
        return (words_[k / kWordBits] >> (k % kWordBits)) & 1;
    }
    void set(size_t k, bool value) {
        uint64_t mask = uint64_t{1} << (k % kWordBits);
        if (value) {
            words_[k / kWordBits] |= mask;
        } else {
            words_[k / kWordBits] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k / kWordBits] ^= uint64_t{1} << (k % kWordBits);
    }

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

    BitVec &operator^=(const BitVec &other);
    BitVec &operator&=(const BitVec &other);
    BitVec &operator|=(const BitVec &other);
    friend BitVec operator^(BitVec a, const BitVec &b) {
        return a ^= b;
    }
    friend BitVec operator&(BitVec a, const BitVec &b) {
        return a &= b;
    }
    friend BitVec operator|(BitVec a, const BitVec &b) {
        return a |= b;
    }
    bool operator==(const BitVec &other) const = default;

    bool any() const;
    bool none() const {
        return !any();
    }
    size_t popcount() const;

    /// Inner product over GF(2).
    bool dot(const BitVec &other) const;

    /// Concatenation `[*this, tail]`.
    BitVec concat(const BitVec &tail) const;
    BitVec slice(size_t start, size_t length) const;

    std::string str() const;

   private:
    size_t size_ = 0;
    std::vector<uint64_t> words_;
};

/// Dense row-major matrix over GF(2). Rows are stored contiguously so that
/// row operations are straight word-level XOR loops.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for_bits(cols)), data_(rows * stride_, 0) {
    }
    static BitMatrix identity(size_t n);
    static BitMatrix from_rows(std::span<const BitVec> rows, size_t cols);
    /// Rows given as '0'/'1' strings of equal length.
    static BitMatrix from_strings(std::span<const std::string_view> rows);

    size_t num_rows() const {
        return rows_;
    }
    size_t num_cols() const {
        return cols_;
    }
    size_t stride() const {
        return stride_;
    }

    bool get(size_t r, size_t c) const {
        return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1;
    }
    void set(size_t r, size_t c, bool value) {
        uint64_t &w = data_[r * stride_ + c / kWordBits];
        uint64_t mask = uint64_t{1} << (c % kWordBits);
        w = value ? (w | mask) : (w & ~mask);
    }
    void flip(size_t r, size_t c) {
        data_[r * stride_ + c / kWordBits] ^= uint64_t{1} << (c % kWordBits);
    }

    std::span<uint64_t> row_words(size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<const uint64_t> row_words(size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }
    BitVec row(size_t r) const;
    void set_row(size_t r, const BitVec &v);
    void push_row(const BitVec &v);

    /// row[dst] ^= row[src]
    void xor_row(size_t dst, size_t src);
    void swap_rows(size_t a, size_t b);

    BitVec multiply(const BitVec &x) const;
    BitMatrix transposed() const;

    bool operator==(const BitMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

/// Result of in-place Gauss-Jordan elimination.
///
/// Pivot rule: scan columns left to right; the pivot for a column is the
/// first not-yet-used row holding a one there. Row `i` of `reduced` owns
/// `pivot_cols[i]`; rows past `pivot_cols.size()` are zero.
struct Echelon {
    BitMatrix reduced;
    std::vector<size_t> pivot_cols;
    /// `pivot_rows[i]` is the original index of the row that became row i.
    std::vector<size_t> pivot_rows;

    size_t rank() const {
        return pivot_cols.size();
    }
};

/// Fully reduced row echelon form. `col_limit` restricts pivoting to the
/// first `col_limit` columns (the rest are carried along, as for an
/// augmented system).
Echelon row_reduce(BitMatrix m, size_t col_limit = SIZE_MAX);

size_t rank(BitMatrix m);
std::optional<BitVec> solve(const BitMatrix &m, const BitVec &b);
std::vector<BitVec> nullspace_basis(const BitMatrix &m);
bool in_rowspace(const BitMatrix &m, const BitVec &v);

}  // namespace qmon

#endif
