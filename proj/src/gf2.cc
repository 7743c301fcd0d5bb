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

#include "qmon/gf2.h"

#include <algorithm>
#include <numeric>

#include "qmon/errors.h"

namespace qmon {

namespace {

void require_same_size(size_t a, size_t b, const char *what) {
    if (a != b) {
        throw ContractViolation(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
    }
}

}  // namespace

BitVec BitVec::from_string(std::string_view bits) {
    BitVec v(bits.size());
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k] == '1') {
            v.set(k, true);
        } else if (bits[k] != '0') {
            throw ContractViolation("BitVec::from_string: expected '0' or '1', got '" + std::string(1, bits[k]) +
                                    "'");
        }
    }
    return v;
}

BitVec &BitVec::operator^=(const BitVec &other) {
    require_same_size(size_, other.size_, "BitVec xor");
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &other) {
    require_same_size(size_, other.size_, "BitVec and");
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

BitVec &BitVec::operator|=(const BitVec &other) {
    require_same_size(size_, other.size_, "BitVec or");
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] |= other.words_[w];
    }
    return *this;
}

bool BitVec::any() const {
    return std::any_of(words_.begin(), words_.end(), [](uint64_t w) { return w != 0; });
}

size_t BitVec::popcount() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVec::dot(const BitVec &other) const {
    require_same_size(size_, other.size_, "BitVec dot");
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

BitVec BitVec::concat(const BitVec &tail) const {
    BitVec out(size_ + tail.size_);
    for (size_t k = 0; k < size_; k++) {
        if (get(k)) {
            out.set(k, true);
        }
    }
    for (size_t k = 0; k < tail.size_; k++) {
        if (tail.get(k)) {
            out.set(size_ + k, true);
        }
    }
    return out;
}

BitVec BitVec::slice(size_t start, size_t length) const {
    if (start + length > size_) {
        throw ContractViolation("BitVec::slice out of range");
    }
    BitVec out(length);
    for (size_t k = 0; k < length; k++) {
        if (get(start + k)) {
            out.set(k, true);
        }
    }
    return out;
}

std::string BitVec::str() const {
    std::string out(size_, '0');
    for (size_t k = 0; k < size_; k++) {
        if (get(k)) {
            out[k] = '1';
        }
    }
    return out;
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m.set(k, k, true);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVec> rows, size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        m.set_row(r, rows[r]);
    }
    return m;
}

BitMatrix BitMatrix::from_strings(std::span<const std::string_view> rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    BitMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        m.set_row(r, BitVec::from_string(rows[r]));
    }
    return m;
}

BitVec BitMatrix::row(size_t r) const {
    BitVec v(cols_);
    auto src = row_words(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

void BitMatrix::set_row(size_t r, const BitVec &v) {
    require_same_size(v.size(), cols_, "BitMatrix::set_row");
    auto src = v.words();
    std::copy(src.begin(), src.end(), data_.begin() + r * stride_);
}

void BitMatrix::push_row(const BitVec &v) {
    if (rows_ == 0 && cols_ == 0 && v.size() != 0) {
        cols_ = v.size();
        stride_ = words_for_bits(cols_);
    }
    require_same_size(v.size(), cols_, "BitMatrix::push_row");
    data_.resize((rows_ + 1) * stride_, 0);
    rows_++;
    set_row(rows_ - 1, v);
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

BitVec BitMatrix::multiply(const BitVec &x) const {
    require_same_size(x.size(), cols_, "BitMatrix::multiply");
    BitVec out(rows_);
    auto xw = x.words();
    for (size_t r = 0; r < rows_; r++) {
        const uint64_t *row = data_.data() + r * stride_;
        uint64_t acc = 0;
        for (size_t w = 0; w < stride_; w++) {
            acc ^= row[w] & xw[w];
        }
        if (std::popcount(acc) & 1) {
            out.set(r, true);
        }
    }
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            if (get(r, c)) {
                t.set(c, r, true);
            }
        }
    }
    return t;
}

Echelon row_reduce(BitMatrix m, size_t col_limit) {
    Echelon result;
    size_t rows = m.num_rows();
    size_t cols = std::min(col_limit, m.num_cols());
    size_t stride = m.stride();
    std::vector<size_t> order(rows);
    std::iota(order.begin(), order.end(), 0);

    size_t next = 0;
    for (size_t c = 0; c < cols && next < rows; c++) {
        size_t word = c / kWordBits;
        uint64_t mask = uint64_t{1} << (c % kWordBits);
        size_t pivot = next;
        while (pivot < rows && !(m.row_words(pivot)[word] & mask)) {
            pivot++;
        }
        if (pivot == rows) {
            continue;
        }
        m.swap_rows(pivot, next);
        std::swap(order[pivot], order[next]);

        // The pivot row is zero left of column c, so XOR can start at its word.
        const uint64_t *p = m.row_words(next).data();
        for (size_t r = 0; r < rows; r++) {
            if (r == next) {
                continue;
            }
            uint64_t *t = m.row_words(r).data();
            if (t[word] & mask) {
                for (size_t w = word; w < stride; w++) {
                    t[w] ^= p[w];
                }
            }
        }
        result.pivot_cols.push_back(c);
        result.pivot_rows.push_back(order[next]);
        next++;
    }
    result.reduced = std::move(m);
    return result;
}

size_t rank(BitMatrix m) {
    return row_reduce(std::move(m)).rank();
}

std::optional<BitVec> solve(const BitMatrix &m, const BitVec &b) {
    require_same_size(b.size(), m.num_rows(), "solve");
    size_t n = m.num_cols();
    BitMatrix aug(m.num_rows(), n + 1);
    for (size_t r = 0; r < m.num_rows(); r++) {
        for (size_t c = 0; c < n; c++) {
            if (m.get(r, c)) {
                aug.set(r, c, true);
            }
        }
        if (b.get(r)) {
            aug.set(r, n, true);
        }
    }
    Echelon e = row_reduce(std::move(aug), n);
    for (size_t r = e.rank(); r < m.num_rows(); r++) {
        if (e.reduced.get(r, n)) {
            return std::nullopt;
        }
    }
    BitVec x(n);
    for (size_t i = 0; i < e.rank(); i++) {
        if (e.reduced.get(i, n)) {
            x.set(e.pivot_cols[i], true);
        }
    }
    return x;
}

std::vector<BitVec> nullspace_basis(const BitMatrix &m) {
    Echelon e = row_reduce(m);
    size_t n = m.num_cols();
    std::vector<bool> is_pivot(n, false);
    for (size_t c : e.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<BitVec> basis;
    basis.reserve(n - e.rank());
    for (size_t f = 0; f < n; f++) {
        if (is_pivot[f]) {
            continue;
        }
        BitVec v(n);
        v.set(f, true);
        for (size_t i = 0; i < e.rank(); i++) {
            if (e.reduced.get(i, f)) {
                v.set(e.pivot_cols[i], true);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_rowspace(const BitMatrix &m, const BitVec &v) {
    require_same_size(v.size(), m.num_cols(), "in_rowspace");
    if (v.none()) {
        return true;
    }
    // Reduce v against the echelon form: for each pivot, clear v's bit there.
    Echelon e = row_reduce(m);
    BitVec rest = v;
    for (size_t i = 0; i < e.rank(); i++) {
        if (rest.get(e.pivot_cols[i])) {
            auto row = e.reduced.row_words(i);
            auto out = rest.words();
            for (size_t w = 0; w < out.size(); w++) {
                out[w] ^= row[w];
            }
        }
    }
    return rest.none();
}

}  // namespace qmon
