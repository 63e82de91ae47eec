// Copyright 2026 The ftsp authors
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

#include "ftsp/bitmat.hpp"

#include <bit>
#include <stdexcept>

namespace ftsp {

namespace {

uint64_t pad_mask(std::size_t len) {
    std::size_t rem = len & 63;
    return rem == 0 ? ~uint64_t{0} : (uint64_t{1} << rem) - 1;
}

}  // namespace

BitVector BitVector::from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("BitVector::from_string: bad character");
        }
    }
    return v;
}

BitVector BitVector::unit(std::size_t len, std::size_t index) {
    BitVector v(len);
    if (index >= len) {
        throw std::out_of_range("BitVector::unit: index out of range");
    }
    v.set(index, true);
    return v;
}

void BitVector::set_word(std::size_t w, uint64_t value) {
    words_[w] = value;
    if (w + 1 == words_.size()) {
        words_[w] &= pad_mask(len_);
    }
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.len_ != len_) {
        throw std::invalid_argument("BitVector xor: length mismatch");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

std::size_t BitVector::weight() const {
    std::size_t total = 0;
    for (uint64_t w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

bool BitVector::any() const {
    for (uint64_t w : words_) {
        if (w != 0) {
            return true;
        }
    }
    return false;
}

bool BitVector::dot(const BitVector& other) const {
    if (other.len_ != len_) {
        throw std::invalid_argument("BitVector::dot: length mismatch");
    }
    uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const {
    std::size_t seed = v.size();
    for (std::size_t w = 0; w < v.num_words(); ++w) {
        seed ^= static_cast<std::size_t>(v.word(w)) + 0x9e3779b97f4a7c15ULL +
                (seed << 6) + (seed >> 2);
    }
    return seed;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (rows[r][c] == '1') {
                m.set(r, c, true);
            } else if (rows[r][c] != '0') {
                throw std::invalid_argument("BitMatrix::from_rows: bad character");
            }
        }
    }
    return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    for (std::size_t w = 0; w < wpr_; ++w) {
        v.set_word(w, words_[r * wpr_ + w]);
    }
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("BitMatrix::set_row: length mismatch");
    }
    for (std::size_t w = 0; w < wpr_; ++w) {
        words_[r * wpr_ + w] = v.word(w);
    }
}

void BitMatrix::append_row(const BitVector& v) {
    if (rows_ == 0 && cols_ == 0) {
        cols_ = v.size();
        wpr_ = (cols_ + 63) / 64;
    }
    if (v.size() != cols_) {
        throw std::invalid_argument("BitMatrix::append_row: length mismatch");
    }
    rows_ += 1;
    for (std::size_t w = 0; w < wpr_; ++w) {
        words_.push_back(v.word(w));
    }
}

BitVector BitMatrix::column(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v.set(r, get(r, c));
    }
    return v;
}

void BitMatrix::col_add_inplace(std::size_t src, std::size_t dst) {
    if (src == dst) {
        throw std::invalid_argument("col_add: src == dst");
    }
    if (src >= cols_ || dst >= cols_) {
        throw std::out_of_range("col_add: column index out of range");
    }
    std::size_t sw = src >> 6, sb = src & 63;
    std::size_t dw = dst >> 6, db = dst & 63;
    for (std::size_t r = 0; r < rows_; ++r) {
        uint64_t bit = (words_[r * wpr_ + sw] >> sb) & 1;
        words_[r * wpr_ + dw] ^= bit << db;
    }
}

void BitMatrix::row_add_inplace(std::size_t src, std::size_t dst) {
    for (std::size_t w = 0; w < wpr_; ++w) {
        words_[dst * wpr_ + w] ^= words_[src * wpr_ + w];
    }
}

std::size_t BitMatrix::count_ones() const {
    std::size_t total = 0;
    for (uint64_t w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

std::string BitMatrix::to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
        s += row(r).to_string();
        s += '\n';
    }
    return s;
}

BitMatrix col_add(const BitMatrix& m, std::size_t src, std::size_t dst) {
    BitMatrix out = m;
    out.col_add_inplace(src, dst);
    return out;
}

RrefResult rref(const BitMatrix& m) {
    BitMatrix out = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < out.cols() && r < out.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < out.rows() && !out.get(pivot, c)) {
            ++pivot;
        }
        if (pivot == out.rows()) {
            continue;
        }
        if (pivot != r) {
            for (std::size_t cc = 0; cc < out.cols(); ++cc) {
                bool a = out.get(r, cc), b = out.get(pivot, cc);
                out.set(r, cc, b);
                out.set(pivot, cc, a);
            }
        }
        for (std::size_t rr = 0; rr < out.rows(); ++rr) {
            if (rr != r && out.get(rr, c)) {
                out.row_add_inplace(r, rr);
            }
        }
        ++r;
    }
    return {out, r};
}

std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

bool in_row_space(const BitMatrix& m, const BitVector& v) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument("in_row_space: length mismatch");
    }
    return RowBasis(m).contains(v);
}

BitMatrix mat_mul_t(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols()) {
        throw std::invalid_argument("mat_mul_t: dimension mismatch");
    }
    BitMatrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BitVector ra = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            out.set(i, j, ra.dot(b.row(j)));
        }
    }
    return out;
}

bool same_row_space(const BitMatrix& a, const BitMatrix& b) {
    RowBasis ba(a);
    RowBasis bb(b);
    if (ba.rank() != bb.rank()) {
        return false;
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        if (!ba.contains(b.row(r))) {
            return false;
        }
    }
    return true;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0) {
        throw std::invalid_argument("vstack: column mismatch");
    }
    BitMatrix out(0, a.rows() > 0 ? a.cols() : b.cols());
    out = BitMatrix(a.rows() + b.rows(), a.rows() > 0 ? a.cols() : b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        out.set_row(r, a.row(r));
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        out.set_row(a.rows() + r, b.row(r));
    }
    return out;
}

RowBasis::RowBasis(const BitMatrix& m) : width_(m.cols()) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        insert(m.row(r));
    }
}

bool RowBasis::insert(BitVector v) {
    if (v.size() != width_) {
        throw std::invalid_argument("RowBasis::insert: length mismatch");
    }
    v = reduce(std::move(v));
    if (!v.any()) {
        return false;
    }
    std::size_t pivot = 0;
    while (!v.get(pivot)) {
        ++pivot;
    }
    // keep existing rows reduced against the new one
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].get(pivot)) {
            rows_[i] ^= v;
        }
    }
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < pivot) {
        ++at;
    }
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), pivot);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
    return true;
}

BitVector RowBasis::reduce(BitVector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (v.get(pivots_[i])) {
            v ^= rows_[i];
        }
    }
    return v;
}

bool RowBasis::contains(const BitVector& v) const { return !reduce(v).any(); }

}  // namespace ftsp
