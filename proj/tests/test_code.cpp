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

#include "ftsp/code.hpp"

#include <doctest.h>

#include "ftsp/errors.hpp"

using namespace ftsp;

namespace {

const std::vector<std::string> kSteaneRows = {"1010101", "0110011", "0001111"};

CssCode steane() {
    BitMatrix h = BitMatrix::from_rows(kSteaneRows);
    return CssCode::validate(h, h);
}

// independent distance oracle: scan all vectors of F_2^n
std::size_t distance_exhaustive(const CssCode& code, Basis basis) {
    const BitMatrix& h_same = code.checks(basis);
    const BitMatrix& h_opp = code.checks(opposite(basis));
    std::size_t best = code.n + 1;
    REQUIRE(code.n <= 20);
    for (uint64_t mask = 1; mask < (uint64_t{1} << code.n); ++mask) {
        BitVector v(code.n);
        for (std::size_t q = 0; q < code.n; ++q) {
            if ((mask >> q) & 1) {
                v.set(q, true);
            }
        }
        bool in_kernel = true;
        for (std::size_t r = 0; r < h_opp.rows(); ++r) {
            if (h_opp.row(r).dot(v)) {
                in_kernel = false;
                break;
            }
        }
        if (!in_kernel || in_row_space(h_same, v)) {
            continue;
        }
        best = std::min(best, v.weight());
    }
    return best;
}

}  // namespace

TEST_CASE("validate the Steane code") {
    CssCode code = steane();
    CHECK(code.n == 7);
    CHECK(code.k == 1);
    CHECK(code.m_x() == 3);
    CHECK(code.m_z() == 3);
    CHECK(mat_mul_t(code.h_x, code.h_z).count_ones() == 0);
    // logical pairing is the identity
    BitMatrix pairing = mat_mul_t(code.logicals_x, code.logicals_z);
    CHECK(pairing == BitMatrix::identity(1));
    // logicals live in the kernel of the opposite checks, outside the
    // stabilizer
    BitVector lx = code.logicals_x.row(0);
    for (std::size_t r = 0; r < code.h_z.rows(); ++r) {
        CHECK_FALSE(code.h_z.row(r).dot(lx));
    }
    CHECK_FALSE(in_row_space(code.h_x, lx));
}

TEST_CASE("validate rejects anticommuting rows naming the pair") {
    BitMatrix hx = BitMatrix::from_rows({"10"});
    BitMatrix hz = BitMatrix::from_rows({"10"});
    CHECK_THROWS_WITH_AS(CssCode::validate(hx, hz),
                         doctest::Contains("X row 0"), ValidationError);
}

TEST_CASE("validate deduplicates dependent rows with a warning") {
    BitMatrix hx = BitMatrix::from_rows({"1010101", "0110011", "1100110"});
    BitMatrix hz = BitMatrix::from_rows(kSteaneRows);
    std::vector<std::string> warnings;
    CssCode code = CssCode::validate(hx, hz, &warnings);
    CHECK(code.m_x() == 2);
    CHECK(warnings.size() == 1);
    CHECK(code.k == 2);
}

TEST_CASE("validate the trivial one-qubit code") {
    CssCode code = CssCode::validate(BitMatrix(0, 1), BitMatrix(0, 1));
    CHECK(code.n == 1);
    CHECK(code.k == 1);
    CHECK(code.logicals_x.row(0) == BitVector::from_string("1"));
    CHECK(code.logicals_z.row(0) == BitVector::from_string("1"));
}

TEST_CASE("distance of the Steane code") {
    CssCode code = steane();
    CHECK(distance(code, Basis::X) == 3);
    CHECK(distance(code, Basis::Z) == 3);
    CHECK(distance_exhaustive(code, Basis::X) == 3);
}

TEST_CASE("distance cap yields no result") {
    CssCode code = steane();
    CHECK_FALSE(distance(code, Basis::X, 5).has_value());
}

TEST_CASE("registry codes validate and match their registered distance") {
    for (const RegistryEntry& entry : registry_list()) {
        CAPTURE(entry.name);
        CssCode code = registry_lookup(entry.name);
        CHECK(code.n == entry.n);
        CHECK(code.k == entry.k);
        CHECK(code.d == entry.d);
        CHECK(mat_mul_t(code.h_x, code.h_z).count_ones() == 0);
        if (code.k > 0) {
            CHECK(mat_mul_t(code.logicals_x, code.logicals_z) ==
                  BitMatrix::identity(code.k));
        }
        CHECK(distance(code, Basis::X) == entry.d);
        CHECK(distance(code, Basis::Z) == entry.d);
    }
}

TEST_CASE("registry lookup examples") {
    CssCode s = registry_lookup("steane");
    CHECK(s.n == 7);
    CHECK(s.k == 1);

    CssCode cc17 = registry_lookup("cc_4_8_8_17");
    CHECK(cc17.n == 17);
    CHECK(distance(cc17, Basis::X) == 5);

    CHECK_THROWS_WITH_AS(registry_lookup("nonexistent"),
                         doctest::Contains("steane"), ValidationError);
}

TEST_CASE("stored automorphisms preserve both stabilizer groups") {
    for (const RegistryEntry& entry : registry_list()) {
        if (!entry.automorphism.has_value()) {
            continue;
        }
        CAPTURE(entry.name);
        CssCode code = registry_lookup(entry.name);
        const std::vector<std::size_t>& perm = *entry.automorphism;
        REQUIRE(perm.size() == code.n);
        // permutation is a bijection
        std::vector<bool> seen(code.n, false);
        for (std::size_t image : perm) {
            REQUIRE(image < code.n);
            CHECK_FALSE(seen[image]);
            seen[image] = true;
        }
        for (Basis basis : {Basis::X, Basis::Z}) {
            const BitMatrix& h = code.checks(basis);
            BitMatrix permuted(h.rows(), h.cols());
            for (std::size_t r = 0; r < h.rows(); ++r) {
                for (std::size_t q = 0; q < code.n; ++q) {
                    if (h.get(r, q)) {
                        permuted.set(r, perm[q], true);
                    }
                }
            }
            CHECK(same_row_space(h, permuted));
        }
    }
}

TEST_CASE("parse_check_file on the Steane matrices") {
    std::string text =
        "# seven-qubit code\n"
        "HX\n"
        "1 0 1 0 1 0 1\n"
        "0 1 1 0 0 1 1\n"
        "\n"
        "0 0 0 1 1 1 1  # last row\n"
        "HZ\n"
        "1010101\n"
        "0110011\n"
        "0001111\n";
    auto [hx, hz] = parse_check_file(text);
    CHECK(hx == BitMatrix::from_rows(kSteaneRows));
    CHECK(hz == BitMatrix::from_rows(kSteaneRows));
}

TEST_CASE("parse_check_file errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_check_file("HX\n101\n10\n"),
                         doctest::Contains("line 3"), ParseError);
    CHECK_THROWS_WITH_AS(parse_check_file("101\n"), doctest::Contains("line 1"),
                         ParseError);
    CHECK_THROWS_AS(parse_check_file("HX\n1 0 2\n"), ParseError);
    CHECK_THROWS_AS(parse_check_file(""), ParseError);
}

TEST_CASE("check file round trip is bit exact") {
    for (const RegistryEntry& entry : registry_list()) {
        CssCode code = registry_lookup(entry.name);
        auto [hx, hz] = parse_check_file(serialize_check_file(code.h_x, code.h_z));
        CHECK(hx == code.h_x);
        CHECK(hz == code.h_z);
    }
}
