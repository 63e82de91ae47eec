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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ftsp {

/// Packed bit vector over GF(2). Padding bits beyond `size()` are kept zero.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    /// Parses "0101..." (most significant index last, i.e. bit i of the
    /// string is entry i).
    static BitVector from_string(const std::string& bits);
    static BitVector unit(std::size_t len, std::size_t index);

    std::size_t size() const { return len_; }
    std::size_t num_words() const { return words_.size(); }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    uint64_t word(std::size_t w) const { return words_[w]; }
    void set_word(std::size_t w, uint64_t value);

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    bool operator==(const BitVector& other) const = default;

    std::size_t weight() const;
    bool any() const;
    /// Parity of the AND with `other` (the GF(2) inner product).
    bool dot(const BitVector& other) const;

    std::string to_string() const;

  private:
    std::size_t len_ = 0;
    std::vector<uint64_t> words_;
};

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const;
};

/// Dense row-major matrix over GF(2).
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {}

    /// Each string is one row, "0110...". All rows must have equal length.
    static BitMatrix from_rows(const std::vector<std::string>& rows);
    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        uint64_t mask = uint64_t{1} << (c & 63);
        if (v) {
            words_[r * wpr_ + (c >> 6)] |= mask;
        } else {
            words_[r * wpr_ + (c >> 6)] &= ~mask;
        }
    }

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    void append_row(const BitVector& v);
    BitVector column(std::size_t c) const;

    /// XORs column `src` into column `dst` in place.
    void col_add_inplace(std::size_t src, std::size_t dst);
    /// XORs row `src` into row `dst` in place.
    void row_add_inplace(std::size_t src, std::size_t dst);

    std::size_t count_ones() const;
    bool operator==(const BitMatrix& other) const = default;
    std::string to_string() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<uint64_t> words_;
};

struct RrefResult {
    BitMatrix matrix;
    std::size_t rank;
};

/// Returns `m` with column `dst` replaced by column `dst` xor column `src`.
BitMatrix col_add(const BitMatrix& m, std::size_t src, std::size_t dst);

/// Reduced row echelon form over GF(2); pivot columns appear in increasing
/// order and zero rows sink to the bottom.
RrefResult rref(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

/// True iff `v` is a GF(2) linear combination of the rows of `m`.
bool in_row_space(const BitMatrix& m, const BitVector& v);

/// a * b^T over GF(2); shape (a.rows x b.rows).
BitMatrix mat_mul_t(const BitMatrix& a, const BitMatrix& b);

/// True iff the two matrices span the same row space.
bool same_row_space(const BitMatrix& a, const BitMatrix& b);

/// Stacks the rows of `a` on top of the rows of `b` (equal column counts).
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);

/// Incrementally maintained reduced basis of a row space. Supports O(rank)
/// membership and coset-representative queries; this is the workhorse behind
/// stabilizer-equivalence checks, which run in tight loops.
class RowBasis {
  public:
    RowBasis() = default;
    explicit RowBasis(std::size_t width) : width_(width) {}
    explicit RowBasis(const BitMatrix& m);

    /// Adds `v` to the span. Returns true if the rank increased.
    bool insert(BitVector v);

    /// Fully reduces `v` against the basis; the result is the canonical coset
    /// representative (zero iff `v` is in the span).
    BitVector reduce(BitVector v) const;

    bool contains(const BitVector& v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }

  private:
    std::size_t width_ = 0;
    std::vector<BitVector> rows_;   // reduced; pivots_ sorted ascending
    std::vector<std::size_t> pivots_;
};

}  // namespace ftsp
