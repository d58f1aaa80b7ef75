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
#include "medgenus/elliptic.hpp"
#include "medgenus/pgl2.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace medgenus;

namespace {

const FieldSpec& field_of(uint64_t q) {
    switch (q) {
        case 9: return FieldSpec::get(3, 2);
        case 25: return FieldSpec::get(5, 2);
        case 27: return FieldSpec::get(3, 3);
        default: return FieldSpec::get(q);
    }
}

// is y^2 = g isomorphic to y^2 = h over F_q? scan x -> u^2 x + r, y -> u^3 y
bool cubics_isomorphic(const Poly& g, const Poly& h) {
    const FieldSpec& k = g.field();
    for (uint64_t u = 1; u < k.q(); ++u) {
        uint64_t u2 = k.mul(u, u);
        uint64_t u6inv = k.inv(k.mul(u2, k.mul(u2, u2)));
        for (uint64_t r = 0; r < k.q(); ++r)
            if (g.composed_linear(u2, r).scaled(u6inv) == h) return true;
    }
    return false;
}

} // namespace

TEST_CASE("group law basics") {
    const FieldSpec& k = FieldSpec::get(5);
    EllipticCurve E = make_elliptic(Poly::from_ints(k, {0, -1, 0, 1})); // x^3 - x
    ECPoint P = ECPoint::affine(0, 0), Q = ECPoint::affine(1, 0);
    CHECK(ec_add(E, P, ECPoint::infinity()) == P);
    CHECK(ec_add(E, P, ec_neg(E, P)) == ECPoint::infinity());
    CHECK(ec_add(E, P, Q) == ECPoint::affine(4, 0)); // third 2-torsion point
    CHECK_THROWS(make_elliptic(Poly::from_ints(k, {0, 0, 0, 2})));
    CHECK_THROWS(make_elliptic(Poly::from_ints(k, {1, 0, 1})));
}

TEST_CASE("group law axioms on random points") {
    std::mt19937_64 rng(11);
    for (uint64_t q : {5ull, 7ull, 9ull, 13ull}) {
        const FieldSpec& k = field_of(q);
        for (const auto& E : all_curves(k)) {
            auto pts = ec_points(E);
            for (int iter = 0; iter < 12; ++iter) {
                const ECPoint& P = pts[rng() % pts.size()];
                const ECPoint& Q = pts[rng() % pts.size()];
                const ECPoint& R = pts[rng() % pts.size()];
                CHECK(ec_on_curve(E, ec_add(E, P, Q)));
                CHECK(ec_add(E, ec_add(E, P, Q), R) == ec_add(E, P, ec_add(E, Q, R)));
                CHECK(ec_add(E, P, Q) == ec_add(E, Q, P));
            }
            // point tally matches the curve count
            CHECK(int64_t(pts.size()) == count_points({E.g}));
        }
    }
}

TEST_CASE("j-invariant values") {
    const FieldSpec& k = FieldSpec::get(7);
    CHECK(ec_j(make_elliptic(Poly::from_ints(k, {0, 1, 0, 1}))) == k.from_int(1728).code);
    CHECK(ec_j(make_elliptic(Poly::from_ints(k, {1, 0, 0, 1}))) == 0);
    const FieldSpec& k5 = FieldSpec::get(5);
    // direct short-model formula as oracle: j = 1728 * 4A^3 / (4A^3 + 27B^2)
    uint64_t A = k5.from_int(-1).code, B = 1;
    uint64_t fourA3 = k5.mul(4, k5.mul(A, k5.mul(A, A)));
    uint64_t expect = k5.div(k5.mul(k5.from_int(1728).code, fourA3),
                             k5.add(fourA3, k5.mul(k5.from_int(27).code, k5.mul(B, B))));
    CHECK(ec_j(make_elliptic(Poly::from_ints(k5, {1, -1, 0, 1}))) == expect);
}

TEST_CASE("j is model-stable") {
    std::mt19937_64 rng(5);
    for (uint64_t q : {7ull, 9ull, 13ull}) {
        const FieldSpec& k = field_of(q);
        for (const auto& E : all_curves(k)) {
            for (int iter = 0; iter < 8; ++iter) {
                uint64_t u = 1 + rng() % (k.q() - 1);
                uint64_t r = rng() % k.q();
                uint64_t u2 = k.mul(u, u);
                uint64_t u6inv = k.inv(k.mul(u2, k.mul(u2, u2)));
                Poly g2 = E.g.composed_linear(u2, r).scaled(u6inv);
                CHECK(ec_j(make_elliptic(g2)) == ec_j(E));
            }
        }
    }
}

TEST_CASE("quadratic twist") {
    for (uint64_t q : {7ull, 9ull, 13ull}) {
        const FieldSpec& k = field_of(q);
        for (const auto& E : all_curves(k)) {
            EllipticCurve T = ec_twist(E);
            CHECK(ec_j(T) == ec_j(E));
            CHECK(count_points({E.g}) + count_points({T.g}) == 2 * (int64_t(q) + 1));
            EllipticCurve TT = ec_twist(T);
            CHECK(ec_j(TT) == ec_j(E));
            CHECK(count_points({TT.g}) == count_points({E.g}));
        }
    }
}

TEST_CASE("all_curves is a transversal of the isomorphism classes") {
    for (uint64_t q : {3ull, 5ull, 7ull, 9ull}) {
        const FieldSpec& k = field_of(q);
        auto curves = all_curves(k);
        // pairwise non-isomorphic
        for (size_t i = 0; i < curves.size(); ++i)
            for (size_t j = i + 1; j < curves.size(); ++j)
                CHECK(!cubics_isomorphic(curves[i].g, curves[j].g));
        // every separable monic cubic is isomorphic to exactly one entry
        uint64_t classes_hit = 0;
        for (uint64_t a = 0; a < k.q(); ++a)
            for (uint64_t b = 0; b < k.q(); ++b)
                for (uint64_t c = 0; c < k.q(); ++c) {
                    Poly g(k, {c, b, a, 1});
                    if (!is_separable(g)) continue;
                    int hits = 0;
                    for (const auto& E : curves)
                        if (cubics_isomorphic(g, E.g)) ++hits;
                    REQUIRE(hits == 1);
                    ++classes_hit;
                }
        CHECK(classes_hit > 0);
        // twin for every ordinary j: curve and twist both appear
        for (const auto& E : curves) {
            uint64_t j = ec_j(E);
            if (j == 0 || j == k.from_int(1728).code) continue;
            int with_j = 0;
            for (const auto& F : curves)
                if (ec_j(F) == j) ++with_j;
            CHECK(with_j == 2);
        }
    }
}

TEST_CASE("two-division cosets count #E[2]") {
    for (uint64_t q : {3ull, 5ull, 7ull, 9ull}) {
        const FieldSpec& k = field_of(q);
        for (const auto& E : all_curves(k)) {
            size_t two_torsion = 1 + roots(E.g).size();
            CHECK(detail::two_division_cosets(E).size() == two_torsion);
            auto classes = two_division_classes(E);
            CHECK(classes.size() <= two_torsion);
            CHECK(classes.size() >= 1);
            CHECK(classes.size() <= 4);
            if (count_points({E.g}) % 2 == 1) {
                REQUIRE(classes.size() == 1);
                CHECK(classes[0].representative == ECPoint::infinity());
            }
        }
    }
}

TEST_CASE("two-division classes of y^2 = x^3 - x over F_3") {
    const FieldSpec& k = FieldSpec::get(3);
    EllipticCurve E = make_elliptic(Poly::from_ints(k, {0, -1, 0, 1}));
    CHECK(count_points({E.g}) == 4); // Z/2 x Z/2
    CHECK(detail::two_division_cosets(E).size() == 4);
    // j = 1728 = 0 in F_3; the supersingular automorphism group folds the
    // three finite 2-torsion classes together
    auto classes = two_division_classes(E);
    CHECK(classes.size() == 2);
}

TEST_CASE("lambda orbits") {
    const FieldSpec& k = FieldSpec::get(7);
    auto orbit = lambda_orbit(k, 0, 2, 4);
    CHECK(orbit == std::vector<uint64_t>{2, 4, 6});
    CHECK_THROWS(lambda_orbit(k, 1, 1, 3));
    // permutation independence and S3 closure
    uint64_t rs[3] = {1, 3, 6};
    int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto base = lambda_orbit(k, rs[0], rs[1], rs[2]);
    for (auto& p : perm)
        CHECK(lambda_orbit(k, rs[p[0]], rs[p[1]], rs[p[2]]) == base);
    for (uint64_t lam : base) {
        CHECK(std::binary_search(base.begin(), base.end(), k.inv(lam)));
        CHECK(std::binary_search(base.begin(), base.end(), k.sub(1, lam)));
    }
    CHECK(base.size() <= 6);
    CHECK(6 % base.size() == 0);
}

TEST_CASE("j_of_quartic matches ec_j through changes of model") {
    std::mt19937_64 rng(2718);
    for (uint64_t q : {9ull, 13ull}) {
        const FieldSpec& k = field_of(q);
        for (const auto& E : all_curves(k)) {
            for (int iter = 0; iter < 10; ++iter) {
                uint64_t a, b, c, d;
                do {
                    a = rng() % q;
                    b = rng() % q;
                    c = rng() % q;
                    d = rng() % q;
                } while (k.sub(k.mul(a, d), k.mul(b, c)) == 0);
                Poly f = moebius_act(PGL2Element(k, a, b, c, d), E.g, 4);
                if (!is_separable(f) || f.degree() < 3) continue;
                CHECK(j_of_quartic(f) == ec_j(E));
            }
        }
    }
}

TEST_CASE("j_of_quartic exhaustive over F_5 quartics") {
    const FieldSpec& k = FieldSpec::get(5);
    uint64_t checked = 0;
    for (uint64_t code = 0; code < 5 * 5 * 5 * 5 * 5; ++code) {
        uint64_t v = code;
        std::vector<uint64_t> c(5);
        for (int i = 0; i < 5; ++i) {
            c[i] = v % 5;
            v /= 5;
        }
        if (c[4] == 0) continue;
        Poly f(k, std::move(c));
        if (!is_separable(f)) continue;
        // descend through a rational projective point to a cubic model
        uint64_t j = j_of_quartic(f);
        auto rts = roots(f);
        if (!rts.empty()) {
            // send the root to infinity; the image is a separable cubic
            PGL2Element alpha(k, rts[0], 1, 1, 0); // x -> (r x + 1)/x
            Poly cubic = moebius_act(alpha, f, 4);
            REQUIRE(cubic.degree() == 3);
            CHECK(j_of_quartic(cubic) == j);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("lambda-j relation for split quartics") {
    const FieldSpec& k = FieldSpec::get(13);
    // f = x (x-1) (x-lam) (x - mu) with all roots rational: j computed from the
    // cross-ratio must match the invariant route
    for (uint64_t lam = 2; lam < 13; ++lam)
        for (uint64_t mu = 2; mu < 13; ++mu) {
            if (mu == lam) continue;
            Poly f = Poly::from_ints(k, {0, 1}) * Poly::from_ints(k, {-1, 1}) *
                     Poly(k, {k.neg(lam), 1}) * Poly(k, {k.neg(mu), 1});
            uint64_t j = j_of_quartic(f);
            bool matched = false;
            // cross-ratios of the four roots, all orderings
            uint64_t r[4] = {0, 1, lam, mu};
            std::sort(r, r + 4);
            do {
                uint64_t cr = k.div(k.mul(k.sub(r[0], r[2]), k.sub(r[1], r[3])),
                                    k.mul(k.sub(r[1], r[2]), k.sub(r[0], r[3])));
                uint64_t num = k.sub(k.add(k.mul(cr, cr), 1), cr);
                num = k.mul(k.from_int(256).code, k.mul(num, k.mul(num, num)));
                uint64_t den = k.mul(k.mul(cr, cr), k.mul(k.sub(cr, 1), k.sub(cr, 1)));
                if (k.div(num, den) == j) matched = true;
            } while (std::next_permutation(r, r + 4));
            CHECK(matched);
        }
}
