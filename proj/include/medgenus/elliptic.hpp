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

#pragma once

#include "medgenus/counting.hpp"
#include "medgenus/poly.hpp"

namespace medgenus {

/// y^2 = g with g a monic separable cubic.
struct EllipticCurve {
    Poly g;

    const FieldSpec& field() const { return g.field(); }
    bool operator==(const EllipticCurve& o) const { return g == o.g; }
};

EllipticCurve make_elliptic(const Poly& g); // validates the invariants

/// A point of E(F_q): infinity or affine (x, y) with y^2 = g(x).
struct ECPoint {
    bool inf = true;
    uint64_t x = 0;
    uint64_t y = 0;

    static ECPoint infinity() { return {}; }
    static ECPoint affine(uint64_t x, uint64_t y) { return {false, x, y}; }
    bool operator==(const ECPoint& o) const {
        return inf == o.inf && (inf || (x == o.x && y == o.y));
    }
    bool operator<(const ECPoint& o) const { // infinity first, then by (x, y)
        if (inf != o.inf) return inf;
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

bool ec_on_curve(const EllipticCurve& E, const ECPoint& P);
ECPoint ec_neg(const EllipticCurve& E, const ECPoint& P);
ECPoint ec_add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q);
ECPoint ec_double(const EllipticCurve& E, const ECPoint& P);
ECPoint ec_sub(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q);

/// All points of E(F_q), infinity first, then ascending (x, y) codes.
std::vector<ECPoint> ec_points(const EllipticCurve& E);

/// Classical j-invariant; the b-invariant formulas keep this valid in
/// characteristic 3.
uint64_t ec_j(const EllipticCurve& E);

/// Quadratic twist by the canonical nonsquare nu:
/// x^3 + a2 x^2 + a4 x + a6  ->  x^3 + nu a2 x^2 + nu^2 a4 x + nu^3 a6.
EllipticCurve ec_twist(const EllipticCurve& E);

/// Model automorphisms (alpha, beta, gamma): (x, y) -> (alpha x + beta, gamma y)
/// with g(alpha x + beta) = alpha^3 g(x) and gamma^2 = alpha^3.
struct ECAutomorphism {
    uint64_t alpha, beta, gamma;
};
std::vector<ECAutomorphism> ec_automorphisms(const EllipticCurve& E);
ECPoint ec_apply(const EllipticCurve& E, const ECAutomorphism& s, const ECPoint& P);

/// One monic-cubic representative per F_q-isomorphism class, sorted by
/// (j encoding, model coefficients).
std::vector<EllipticCurve> all_curves(const FieldSpec& field);

/// An element of E(k)/2E(k) modulo Aut E, named by its smallest point.
struct TwoDivisionClass {
    ECPoint representative;
};

/// Representatives of E(k)/2E(k) modulo Aut E.  The pre-merge coset count
/// always equals #E[2](F_q).
std::vector<TwoDivisionClass> two_division_classes(const EllipticCurve& E);

namespace detail {
/// Cosets of 2E(k) in E(k) before the Aut-E merge, smallest representatives.
std::vector<ECPoint> two_division_cosets(const EllipticCurve& E);
}

/// The S3-closed set {l, 1/l, 1-l, 1/(1-l), l/(l-1), (l-1)/l} for
/// l = (r3-r1)/(r2-r1); independent of the ordering of the r_i.
std::vector<uint64_t> lambda_orbit(const FieldSpec& field, uint64_t r1, uint64_t r2,
                                   uint64_t r3);

/// j-invariant of the Jacobian of y^2 = f, deg f in {3, 4}.  Pinned so that it
/// agrees with ec_j under every moebius_act change of model.
uint64_t j_of_quartic(const Poly& f);

} // namespace medgenus
