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
#include "medgenus/orbits.hpp"

#include <random>
#include <set>

using namespace medgenus;

namespace {

const FieldSpec& field_of(uint64_t q) {
    return q == 9 ? FieldSpec::get(3, 2) : FieldSpec::get(q);
}

// scale by the square that brings the leading coefficient to 1 or to the
// canonical nonsquare: a unique representative of f modulo k*^2
Poly square_normalize(const Poly& f) {
    const FieldSpec& k = f.field();
    uint64_t lc = f.lc();
    uint64_t target = k.chi(lc) == 1 ? 1 : k.nonsquare();
    return f.scaled(k.div(target, lc));
}

// number of orbits of the separable cubics/quartics under squares + PGL2,
// by flooding each orbit with one pass over the group
uint64_t brute_force_orbit_count(const FieldSpec& k) {
    std::set<Poly> seen;
    uint64_t orbits = 0;
    for (int deg : {3, 4}) {
        uint64_t total = 1;
        for (int i = 0; i <= deg; ++i) total *= k.q();
        for (uint64_t idx = 0; idx < total; ++idx) {
            uint64_t v = idx;
            std::vector<uint64_t> c(deg + 1);
            for (int i = 0; i <= deg; ++i) {
                c[i] = v % k.q();
                v /= k.q();
            }
            if (c[deg] == 0) continue;
            Poly f(k, std::move(c));
            if (!is_separable(f)) continue;
            f = square_normalize(f);
            if (seen.count(f)) continue;
            ++orbits;
            for_each_pgl2(k, [&](const PGL2Element& alpha) {
                Poly img = moebius_act(alpha, f, 4);
                if (img.degree() >= 3) seen.insert(square_normalize(img));
            });
            REQUIRE(seen.count(f)); // identity is in the group
        }
    }
    return orbits;
}

} // namespace

TEST_CASE("pair_to_quartic examples") {
    const FieldSpec& k = FieldSpec::get(5);
    EllipticCurve E = make_elliptic(Poly::from_ints(k, {0, -1, 0, 1})); // x^3 - x
    CHECK(pair_to_quartic(E, ECPoint::infinity()) == E.g);
    CHECK(pair_to_quartic(E, ECPoint::affine(0, 0)) ==
          Poly::from_ints(k, {4, 0, 0, 0, 1})); // x^4 + 4
    // any 2-torsion point gives an even quartic
    for (uint64_t r : roots(E.g)) {
        Poly f = pair_to_quartic(E, ECPoint::affine(r, 0));
        CHECK(f.coeff(1) == 0);
        CHECK(f.coeff(3) == 0);
    }
    CHECK_THROWS(pair_to_quartic(E, ECPoint::affine(2, 2))); // g(2) = 1 != 4
}

TEST_CASE("emitted representatives are separable quartics or cubics") {
    for (uint64_t q : {3ull, 5ull, 7ull, 9ull}) {
        enumerate_orbit_reps(field_of(q), [&](const OrbitRep& rep) {
            CHECK(is_separable(rep.f));
            CHECK((rep.f.degree() == 3 || rep.f.degree() == 4));
            CHECK(ec_on_curve(rep.E, rep.cls.representative));
        });
    }
}

TEST_CASE("discriminant covariance of the lemma construction") {
    // disc(x^4 - 2a x^2 - 8c x + a^2 - 4b) = 2^12 disc(x^3 + a x^2 + bx + c^2)
    std::mt19937_64 rng(31);
    for (uint64_t q : {5ull, 7ull, 13ull}) {
        const FieldSpec& k = FieldSpec::get(q);
        uint64_t pow2_12 = k.pow(2 % q, 12);
        int done = 0;
        while (done < 100) {
            uint64_t a = rng() % q, b = rng() % q, c = rng() % q;
            Poly g(k, {k.mul(c, c), b, a, 1});
            if (!is_separable(g)) continue;
            ++done;
            Poly f(k, {k.sub(k.mul(a, a), k.mul(4 % q, b)), k.neg(k.mul(8 % q, c)),
                       k.neg(k.add(a, a)), 0, 1});
            CHECK(discriminant(f).code == k.mul(pow2_12, discriminant(g).code));
        }
    }
}

TEST_CASE("disc relation holds on every emitted representative") {
    for (uint64_t q : {3ull, 5ull, 7ull, 9ull}) {
        const FieldSpec& k = field_of(q);
        uint64_t pow2_12 = k.pow(k.from_int(2).code, 12);
        enumerate_orbit_reps(k, [&](const OrbitRep& rep) {
            if (rep.cls.representative.inf) return;
            CHECK(discriminant(rep.f).code ==
                  k.mul(pow2_12, discriminant(rep.E.g).code));
        });
    }
}

TEST_CASE("lemma bijection: emitted count equals brute-force orbit count") {
    for (uint64_t q : {3ull, 5ull, 7ull}) {
        const FieldSpec& k = field_of(q);
        uint64_t emitted = 0;
        std::vector<Poly> reps;
        enumerate_orbit_reps(k, [&](const OrbitRep& rep) {
            ++emitted;
            reps.push_back(rep.f);
        });
        CHECK(emitted == brute_force_orbit_count(k));
        // injectivity: no two representatives share an orbit
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j)
                CHECK(!same_orbit(reps[i], reps[j]));
    }
}

TEST_CASE("round trip quartic_to_pair after pair_to_quartic") {
    for (uint64_t q : {3ull, 5ull, 7ull, 9ull}) {
        enumerate_orbit_reps(field_of(q), [&](const OrbitRep& rep) {
            auto [E2, cls2] = quartic_to_pair(rep.f);
            CHECK(E2.g == rep.E.g);
            CHECK(cls2.representative == rep.cls.representative);
        });
    }
}

TEST_CASE("quartic_to_pair on cubics lands on the infinity class") {
    const FieldSpec& k = FieldSpec::get(7);
    Poly g = Poly::from_ints(k, {1, 2, 0, 1});
    REQUIRE(is_separable(g));
    auto [E, cls] = quartic_to_pair(g);
    CHECK(cls.representative == ECPoint::infinity());
    CHECK(ec_j(E) == j_of_quartic(g));
    CHECK_THROWS(quartic_to_pair(Poly::from_ints(k, {1, 1})));
}
