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

#include <random>

#include <doctest.h>

using namespace ftsp;

namespace {

const std::vector<std::string> kSteaneRows = {"1010101", "0110011", "0001111"};

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.set(r, c, rng() & 1);
        }
    }
    return m;
}

BitVector random_vector(std::mt19937_64& rng, std::size_t len) {
    BitVector v(len);
    for (std::size_t i = 0; i < len; ++i) {
        v.set(i, rng() & 1);
    }
    return v;
}

// brute-force row-space membership: all 2^rows combinations
bool in_row_space_exhaustive(const BitMatrix& m, const BitVector& v) {
    REQUIRE(m.rows() <= 12);
    for (std::size_t mask = 0; mask < (std::size_t{1} << m.rows()); ++mask) {
        BitVector acc(m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if ((mask >> r) & 1) {
                acc ^= m.row(r);
            }
        }
        if (acc == v) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("col_add examples") {
    BitMatrix m = BitMatrix::from_rows({"11", "01"});
    BitMatrix out = col_add(m, 0, 1);
    CHECK(out == BitMatrix::from_rows({"10", "01"}));

    BitMatrix zero = BitMatrix::from_rows({"00", "00"});
    CHECK(col_add(zero, 0, 1) == zero);

    BitMatrix steane = BitMatrix::from_rows(kSteaneRows);
    BitMatrix shifted = col_add(steane, 0, 2);
    CHECK(shifted.column(2) == BitVector::from_string("010"));
}

TEST_CASE("col_add contract violations") {
    BitMatrix m = BitMatrix::from_rows({"11", "01"});
    CHECK_THROWS(col_add(m, 0, 0));
    CHECK_THROWS(col_add(m, 0, 2));
}

TEST_CASE("col_add is an involution") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        BitMatrix m = random_matrix(rng, 5, 9);
        std::size_t src = rng() % 9;
        std::size_t dst = rng() % 9;
        if (src == dst) {
            continue;
        }
        CHECK(col_add(col_add(m, src, dst), src, dst) == m);
    }
}

TEST_CASE("rref examples and properties") {
    BitMatrix id3 = BitMatrix::identity(3);
    RrefResult r = rref(id3);
    CHECK(r.matrix == id3);
    CHECK(r.rank == 3);

    RrefResult dup = rref(BitMatrix::from_rows({"11", "11"}));
    CHECK(dup.matrix == BitMatrix::from_rows({"11", "00"}));
    CHECK(dup.rank == 1);

    CHECK(rank(BitMatrix::from_rows(kSteaneRows)) == 3);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        BitMatrix m = random_matrix(rng, 6, 10);
        RrefResult once = rref(m);
        RrefResult twice = rref(once.matrix);
        CHECK(once.matrix == twice.matrix);   // idempotent
        CHECK(once.rank == twice.rank);
        // rank equals the number of nonzero rows of the reduced form
        std::size_t nonzero = 0;
        for (std::size_t row = 0; row < once.matrix.rows(); ++row) {
            nonzero += once.matrix.row(row).any();
        }
        CHECK(once.rank == nonzero);
    }
}

TEST_CASE("in_row_space examples") {
    BitMatrix steane = BitMatrix::from_rows(kSteaneRows);
    CHECK(in_row_space(steane, BitVector(7)));
    CHECK(in_row_space(steane, BitVector::from_string("1010101")));
    CHECK_FALSE(in_row_space(steane, BitVector::from_string("1110000")));
    CHECK_THROWS(in_row_space(steane, BitVector(6)));
}

TEST_CASE("in_row_space agrees with exhaustive enumeration") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + rng() % 8;
        std::size_t cols = 2 + rng() % 10;
        BitMatrix m = random_matrix(rng, rows, cols);
        for (int probe = 0; probe < 10; ++probe) {
            BitVector v = random_vector(rng, cols);
            CHECK(in_row_space(m, v) == in_row_space_exhaustive(m, v));
        }
    }
}

TEST_CASE("mat_mul_t examples") {
    BitMatrix id = BitMatrix::identity(4);
    CHECK(mat_mul_t(id, id) == id);

    BitMatrix steane = BitMatrix::from_rows(kSteaneRows);
    BitMatrix zero = mat_mul_t(steane, steane);
    CHECK(zero.count_ones() == 0);

    BitMatrix a = BitMatrix::from_rows({"11"});
    BitMatrix b = BitMatrix::from_rows({"10"});
    CHECK(mat_mul_t(a, b) == BitMatrix::from_rows({"1"}));

    CHECK_THROWS(mat_mul_t(a, BitMatrix::from_rows({"100"})));
}

TEST_CASE("padding bits stay zero through operations") {
    std::mt19937_64 rng(17);
    for (std::size_t len : {1u, 63u, 64u, 65u, 100u}) {
        BitVector v = random_vector(rng, len);
        BitVector w = random_vector(rng, len);
        v ^= w;
        std::size_t rem = len & 63;
        if (rem != 0) {
            CHECK((v.word(v.num_words() - 1) >> rem) == 0);
        }
        std::size_t count = 0;
        for (std::size_t i = 0; i < len; ++i) {
            count += v.get(i);
        }
        CHECK(v.weight() == count);
    }
}

TEST_CASE("RowBasis insert/reduce/contains") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        BitMatrix m = random_matrix(rng, 6, 9);
        RowBasis basis(m);
        CHECK(basis.rank() == rank(m));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            CHECK(basis.contains(m.row(r)));
        }
        BitVector v = random_vector(rng, 9);
        // the reduced vector differs from v by a row-space element
        BitVector reduced = basis.reduce(v);
        CHECK(in_row_space(m, reduced ^ v));
        CHECK(basis.contains(v) == in_row_space_exhaustive(m, v));
    }
}

TEST_CASE("same_row_space and vstack") {
    BitMatrix a = BitMatrix::from_rows({"110", "011"});
    BitMatrix b = BitMatrix::from_rows({"011", "101"});
    CHECK(same_row_space(a, b));
    BitMatrix c = BitMatrix::from_rows({"111"});
    CHECK_FALSE(same_row_space(a, c));
    BitMatrix stacked = vstack(a, c);
    CHECK(stacked.rows() == 3);
    CHECK(stacked.row(2) == BitVector::from_string("111"));
}
