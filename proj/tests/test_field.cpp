/*
   Copyright 2026 the medgenus authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "doctest.h"
#include "medgenus/field.hpp"

#include <set>

using namespace medgenus;

TEST_CASE("prime field basics over F_7") {
    const FieldSpec& k = FieldSpec::get(7);
    CHECK(k.q() == 7);
    CHECK(k.add(3, 5) == 1);
    CHECK(k.mul(3, 5) == 1);
    CHECK(k.inv(3) == 5);
    CHECK(k.neg(2) == 5);
    CHECK(k.pow(3, 6) == 1);
}

TEST_CASE("quadratic character") {
    const FieldSpec& k = FieldSpec::get(7);
    CHECK(k.chi(0) == 0);
    CHECK(k.chi(1) == 1);
    CHECK(k.chi(3) == -1); // 3^3 = 27 = 6 mod 7
    CHECK(k.chi(2) == 1);  // 2 = 3^2 mod 7
    // chi agrees with an exhaustive square scan over several fields
    for (uint64_t q : {3ull, 5ull, 13ull}) {
        const FieldSpec& f = FieldSpec::get(q);
        std::set<uint64_t> squares;
        for (uint64_t a = 1; a < q; ++a) squares.insert(f.mul(a, a));
        for (uint64_t a = 1; a < q; ++a)
            CHECK(f.chi(a) == (squares.count(a) ? 1 : -1));
    }
}

TEST_CASE("square roots deterministic") {
    const FieldSpec& k = FieldSpec::get(7);
    CHECK(k.sqrt(0) == 0);
    CHECK(k.sqrt(4) == 2); // roots are 2 and 5; smaller encoding wins
    CHECK(!k.sqrt(3).has_value());
    for (uint64_t q : {9ull, 25ull, 27ull}) {
        const FieldSpec& f = q == 9 ? FieldSpec::get(3, 2)
                             : q == 25 ? FieldSpec::get(5, 2)
                                       : FieldSpec::get(3, 3);
        for (uint64_t a = 0; a < q; ++a) {
            auto r = f.sqrt(a);
            if (f.chi(a) >= 0) {
                REQUIRE(r.has_value());
                CHECK(f.mul(*r, *r) == a);
                CHECK(*r <= f.neg(*r));
            } else {
                CHECK(!r.has_value());
            }
        }
    }
}

TEST_CASE("table mode agrees with exponentiation mode") {
    for (auto [p, n] : std::vector<std::pair<uint64_t, unsigned>>{{7, 1}, {3, 2}, {5, 2}}) {
        const FieldSpec& k = FieldSpec::get(p, n);
        std::vector<int> before;
        for (uint64_t a = 0; a < k.q(); ++a) before.push_back(k.chi(a));
        k.enable_tables();
        CHECK(k.tables_built());
        for (uint64_t a = 0; a < k.q(); ++a) CHECK(k.chi(a) == before[a]);
    }
}

TEST_CASE("default modulus of F_9 and extension arithmetic") {
    const FieldSpec& k = FieldSpec::get(3, 2);
    // smallest monic irreducible quadratic over F_3 is t^2 + 1
    CHECK(k.modulus() == std::vector<uint64_t>{1, 0, 1});
    uint64_t t = k.encode({0, 1});
    CHECK(k.mul(t, t) == k.neg(1)); // t^2 = -1
    CHECK(k.pow(t, 8) == 1);
    // every nonzero element has order dividing 8
    for (uint64_t a = 1; a < 9; ++a) CHECK(k.pow(a, 8) == 1);
}

TEST_CASE("encode/decode round-trip up to 5^4") {
    for (auto [p, n] : std::vector<std::pair<uint64_t, unsigned>>{
             {3, 1}, {3, 2}, {3, 4}, {5, 2}, {5, 4}, {7, 2}, {13, 1}}) {
        const FieldSpec& k = FieldSpec::get(p, n);
        for (uint64_t a = 0; a < k.q(); ++a) CHECK(k.encode(k.decode(a)) == a);
    }
}

TEST_CASE("field spec parsing") {
    CHECK(&FieldSpec::parse("7") == &FieldSpec::get(7));
    CHECK(&FieldSpec::parse("3^2") == &FieldSpec::get(3, 2));
    CHECK(&FieldSpec::parse("3^2/1,0,1") == &FieldSpec::get(3, 2));
    const FieldSpec& alt = FieldSpec::parse("3^2/2,1,1"); // t^2 + t + 2
    CHECK(alt.q() == 9);
    CHECK(&alt != &FieldSpec::get(3, 2));
    uint64_t t = alt.encode({0, 1});
    CHECK(alt.mul(t, t) == alt.neg(alt.add(t, 2))); // t^2 = -t - 2
    CHECK(FieldSpec::parse(alt.to_string()).modulus() == alt.modulus());
    CHECK_THROWS(FieldSpec::parse("4^2"));
    CHECK_THROWS(FieldSpec::parse("2"));       // odd characteristic only
    CHECK_THROWS(FieldSpec::parse("3^2/1,1")); // wrong length
    CHECK_THROWS(FieldSpec::parse("3^2/1,2,1")); // (t+1)^2 is reducible
}

TEST_CASE("nonsquare and frobenius") {
    const FieldSpec& k = FieldSpec::get(13);
    CHECK(k.chi(k.nonsquare()) == -1);
    const FieldSpec& f9 = FieldSpec::get(3, 2);
    for (uint64_t a = 0; a < 9; ++a) {
        CHECK(f9.frobenius(f9.frobenius(a)) == a);
        // frobenius is additive and multiplicative
        for (uint64_t b = 0; b < 9; ++b) {
            CHECK(f9.frobenius(f9.add(a, b)) == f9.add(f9.frobenius(a), f9.frobenius(b)));
            CHECK(f9.frobenius(f9.mul(a, b)) == f9.mul(f9.frobenius(a), f9.frobenius(b)));
        }
    }
}

TEST_CASE("subfield codes") {
    const FieldSpec& k = FieldSpec::get(3, 4);
    auto sub1 = k.subfield_codes(1);
    CHECK(sub1 == std::vector<uint64_t>{0, 1, 2});
    auto sub2 = k.subfield_codes(2);
    CHECK(sub2.size() == 9);
    for (uint64_t a : sub2)
        for (uint64_t b : sub2) {
            bool found_sum = false, found_prod = false;
            for (uint64_t c : sub2) {
                if (c == k.add(a, b)) found_sum = true;
                if (c == k.mul(a, b)) found_prod = true;
            }
            CHECK(found_sum);
            CHECK(found_prod);
        }
}

TEST_CASE("integer sqrt") {
    CHECK(isqrt_u64(0) == 0);
    CHECK(isqrt_u64(3) == 1);
    CHECK(isqrt_u64(4) == 2);
    CHECK(isqrt_u64(4 * 13) == 7); // floor(2 sqrt 13)
    for (uint64_t v = 0; v < 100000; ++v) {
        uint64_t r = isqrt_u64(v);
        CHECK(r * r <= v);
        CHECK((r + 1) * (r + 1) > v);
    }
}
