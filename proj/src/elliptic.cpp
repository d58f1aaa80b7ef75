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

#include "medgenus/elliptic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace medgenus {

EllipticCurve make_elliptic(const Poly& g) {
    if (g.degree() != 3 || g.lc() != 1)
        throw std::invalid_argument("elliptic model must be a monic cubic");
    if (!is_separable(g)) throw std::invalid_argument("elliptic model must be separable");
    return {g};
}

bool ec_on_curve(const EllipticCurve& E, const ECPoint& P) {
    if (P.inf) return true;
    const FieldSpec& k = E.field();
    return k.mul(P.y, P.y) == E.g.eval(P.x);
}

ECPoint ec_neg(const EllipticCurve& E, const ECPoint& P) {
    if (P.inf) return P;
    return ECPoint::affine(P.x, E.field().neg(P.y));
}

ECPoint ec_add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q) {
    const FieldSpec& k = E.field();
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y == 0) return ECPoint::infinity(); // P + (-P)
        // tangent: s = g'(x) / 2y
        uint64_t s = k.div(E.g.derivative().eval(P.x), k.add(P.y, P.y));
        uint64_t a2 = E.g.coeff(2);
        uint64_t x3 = k.sub(k.sub(k.mul(s, s), a2), k.add(P.x, Q.x));
        uint64_t y3 = k.sub(k.mul(s, k.sub(P.x, x3)), P.y);
        return ECPoint::affine(x3, y3);
    }
    uint64_t s = k.div(k.sub(Q.y, P.y), k.sub(Q.x, P.x));
    uint64_t a2 = E.g.coeff(2);
    uint64_t x3 = k.sub(k.sub(k.mul(s, s), a2), k.add(P.x, Q.x));
    uint64_t y3 = k.sub(k.mul(s, k.sub(P.x, x3)), P.y);
    return ECPoint::affine(x3, y3);
}

ECPoint ec_double(const EllipticCurve& E, const ECPoint& P) { return ec_add(E, P, P); }

ECPoint ec_sub(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q) {
    return ec_add(E, P, ec_neg(E, Q));
}

std::vector<ECPoint> ec_points(const EllipticCurve& E) {
    const FieldSpec& k = E.field();
    std::vector<ECPoint> pts{ECPoint::infinity()};
    for (uint64_t x = 0; x < k.q(); ++x) {
        uint64_t v = E.g.eval(x);
        int c = k.chi(v);
        if (c == 0) {
            pts.push_back(ECPoint::affine(x, 0));
        } else if (c == 1) {
            uint64_t r = *k.sqrt(v);
            pts.push_back(ECPoint::affine(x, r));
            pts.push_back(ECPoint::affine(x, k.neg(r)));
        }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

uint64_t ec_j(const EllipticCurve& E) {
    // b-invariant route, valid in every odd characteristic including 3
    const FieldSpec& k = E.field();
    auto C = [&](long long v) { return k.from_int(v).code; };
    uint64_t a2 = E.g.coeff(2), a4 = E.g.coeff(1), a6 = E.g.coeff(0);
    uint64_t b2 = k.mul(C(4), a2);
    uint64_t b4 = k.mul(C(2), a4);
    uint64_t b6 = k.mul(C(4), a6);
    uint64_t b8 = k.sub(k.mul(k.mul(C(4), a2), a6), k.mul(a4, a4));
    uint64_t c4 = k.sub(k.mul(b2, b2), k.mul(C(24), b4));
    uint64_t disc = k.add(k.sub(k.sub(k.neg(k.mul(k.mul(b2, b2), b8)),
                                      k.mul(C(8), k.mul(b4, k.mul(b4, b4)))),
                                k.mul(C(27), k.mul(b6, b6))),
                          k.mul(C(9), k.mul(b2, k.mul(b4, b6))));
    return k.div(k.mul(c4, k.mul(c4, c4)), disc);
}

EllipticCurve ec_twist(const EllipticCurve& E) {
    const FieldSpec& k = E.field();
    uint64_t nu = k.nonsquare();
    uint64_t nu2 = k.mul(nu, nu), nu3 = k.mul(nu2, nu);
    return {Poly(k, {k.mul(nu3, E.g.coeff(0)), k.mul(nu2, E.g.coeff(1)),
                     k.mul(nu, E.g.coeff(2)), 1})};
}

std::vector<ECAutomorphism> ec_automorphisms(const EllipticCurve& E) {
    const FieldSpec& k = E.field();
    std::vector<ECAutomorphism> out;
    for (uint64_t alpha = 1; alpha < k.q(); ++alpha) {
        if (k.chi(alpha) != 1) continue; // gamma^2 = alpha^3 needs alpha square
        uint64_t a3 = k.mul(alpha, k.mul(alpha, alpha));
        uint64_t gamma = *k.sqrt(a3);
        for (uint64_t beta = 0; beta < k.q(); ++beta) {
            if (E.g.composed_linear(alpha, beta) == E.g.scaled(a3)) {
                out.push_back({alpha, beta, gamma});
                out.push_back({alpha, beta, k.neg(gamma)});
            }
        }
    }
    return out;
}

ECPoint ec_apply(const EllipticCurve& E, const ECAutomorphism& s, const ECPoint& P) {
    if (P.inf) return P;
    const FieldSpec& k = E.field();
    // (x, y) solves y^2 = g(x) iff (alpha x + beta, gamma y) does; the
    // automorphism moves points by the inverse substitution
    uint64_t x = k.div(k.sub(P.x, s.beta), s.alpha);
    uint64_t y = k.div(P.y, s.gamma);
    return ECPoint::affine(x, y);
}

namespace {

// smallest model isomorphic to g under x -> u^2 x + r, y -> u^3 y
Poly canonical_cubic(const Poly& g) {
    const FieldSpec& k = g.field();
    Poly best = g;
    for (uint64_t u = 1; u < k.q(); ++u) {
        uint64_t u2 = k.mul(u, u);
        uint64_t u6inv = k.inv(k.mul(u2, k.mul(u2, u2)));
        for (uint64_t r = 0; r < k.q(); ++r) {
            Poly cand = g.composed_linear(u2, r).scaled(u6inv);
            if (cand < best) best = cand;
        }
    }
    return best;
}

} // namespace

std::vector<EllipticCurve> all_curves(const FieldSpec& k) {
    static std::map<const FieldSpec*, std::vector<EllipticCurve>> cache;
    static std::mutex cache_mtx;
    {
        std::lock_guard<std::mutex> lock(cache_mtx);
        auto it = cache.find(&k);
        if (it != cache.end()) return it->second;
    }
    std::vector<EllipticCurve> out;
    if (k.p() > 3) {
        // depressed models y^2 = x^3 + Ax + B up to (A, B) ~ (u^4 A, u^6 B)
        for (uint64_t A = 0; A < k.q(); ++A)
            for (uint64_t B = 0; B < k.q(); ++B) {
                uint64_t disc = k.add(k.mul(k.from_int(4).code, k.mul(A, k.mul(A, A))),
                                      k.mul(k.from_int(27).code, k.mul(B, B)));
                if (disc == 0) continue;
                bool minimal = true;
                for (uint64_t u = 2; u < k.q() && minimal; ++u) {
                    uint64_t u2 = k.mul(u, u), u4 = 0, u6 = 0;
                    u4 = k.mul(u2, u2);
                    u6 = k.mul(u4, u2);
                    uint64_t A2 = k.mul(u4, A), B2 = k.mul(u6, B);
                    if (A2 < A || (A2 == A && B2 < B)) minimal = false;
                }
                if (minimal) out.push_back({Poly(k, {B, A, 0, 1})});
            }
    } else {
        // characteristic 3: x^2 terms cannot be removed; minimize over the full
        // substitution group instead
        std::set<Poly> seen;
        for (uint64_t a = 0; a < k.q(); ++a)
            for (uint64_t b = 0; b < k.q(); ++b)
                for (uint64_t c = 0; c < k.q(); ++c) {
                    Poly g(k, {c, b, a, 1});
                    if (!is_separable(g)) continue;
                    Poly canon = canonical_cubic(g);
                    if (g == canon && !seen.count(canon)) {
                        seen.insert(canon);
                        out.push_back({canon});
                    }
                }
    }
    std::sort(out.begin(), out.end(), [](const EllipticCurve& x, const EllipticCurve& y) {
        uint64_t jx = ec_j(x), jy = ec_j(y);
        if (jx != jy) return jx < jy;
        return x.g < y.g;
    });
    std::lock_guard<std::mutex> lock(cache_mtx);
    return cache.emplace(&k, std::move(out)).first->second;
}

namespace detail {

std::vector<ECPoint> two_division_cosets(const EllipticCurve& E) {
    auto pts = ec_points(E);
    std::set<ECPoint> doubled;
    for (const auto& P : pts) doubled.insert(ec_double(E, P));
    std::vector<ECPoint> reps;
    std::set<ECPoint> assigned;
    for (const auto& P : pts) {
        if (assigned.count(P)) continue;
        reps.push_back(P);
        for (const auto& D : doubled) assigned.insert(ec_add(E, P, D));
    }
    return reps; // pts is sorted, so each rep is the smallest in its coset
}

} // namespace detail

std::vector<TwoDivisionClass> two_division_classes(const EllipticCurve& E) {
    auto reps = detail::two_division_cosets(E);
    auto pts = ec_points(E);
    std::set<ECPoint> doubled;
    for (const auto& P : pts) doubled.insert(ec_double(E, P));

    auto coset_of = [&](const ECPoint& P) -> size_t {
        for (size_t i = 0; i < reps.size(); ++i)
            if (doubled.count(ec_sub(E, P, reps[i]))) return i;
        throw std::logic_error("point escaped every coset");
    };

    // merge cosets related by an automorphism of E (this includes negation)
    auto autos = ec_automorphisms(E);
    std::vector<size_t> parent(reps.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (size_t i = 0; i < reps.size(); ++i)
        for (const auto& s : autos) {
            size_t j = coset_of(ec_apply(E, s, reps[i]));
            parent[find(i)] = find(j);
        }
    std::vector<TwoDivisionClass> out;
    for (size_t i = 0; i < reps.size(); ++i)
        if (find(i) == i) {
            // smallest representative across the merged cosets
            ECPoint best = reps[i];
            for (size_t j = 0; j < reps.size(); ++j)
                if (find(j) == i && reps[j] < best) best = reps[j];
            out.push_back({best});
        }
    return out;
}

std::vector<uint64_t> lambda_orbit(const FieldSpec& k, uint64_t r1, uint64_t r2, uint64_t r3) {
    if (r1 == r2 || r1 == r3 || r2 == r3)
        throw std::invalid_argument("lambda_orbit needs distinct branch points");
    uint64_t lam = k.div(k.sub(r3, r1), k.sub(r2, r1));
    uint64_t one = 1;
    std::vector<uint64_t> orbit{lam,
                                k.inv(lam),
                                k.sub(one, lam),
                                k.inv(k.sub(one, lam)),
                                k.div(lam, k.sub(lam, one)),
                                k.div(k.sub(lam, one), lam)};
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

namespace {

// j from the cross-ratio of the four branch points, computed in the splitting
// field; characteristic-independent fallback
uint64_t j_via_splitting_field(const Poly& f) {
    const FieldSpec& k = f.field();
    auto degs = factorization_degrees(f);
    unsigned ell = 1;
    for (int d : degs) ell = std::lcm(ell, unsigned(d));
    const SubfieldEmbedding& emb = SubfieldEmbedding::get(k, ell);
    const FieldSpec& K = emb.big();
    auto rs = roots(emb.lift(f));
    if (rs.size() != 4) throw std::logic_error("quartic did not split in its splitting field");
    // lambda = cross-ratio (r1,r2;r3,r4); any ordering gives the same j
    uint64_t lam = K.div(K.mul(K.sub(rs[0], rs[2]), K.sub(rs[1], rs[3])),
                         K.mul(K.sub(rs[1], rs[2]), K.sub(rs[0], rs[3])));
    uint64_t num = K.sub(K.add(K.mul(lam, lam), 1), lam); // lam^2 - lam + 1
    num = K.mul(K.from_int(256).code, K.mul(num, K.mul(num, num)));
    uint64_t den = K.mul(K.mul(lam, lam), K.mul(K.sub(lam, 1), K.sub(lam, 1)));
    auto j = emb.unembed(K.div(num, den));
    if (!j) throw std::logic_error("j-invariant failed to descend to the base field");
    return *j;
}

} // namespace

uint64_t j_of_quartic(const Poly& f) {
    if (!is_separable(f)) throw std::invalid_argument("j_of_quartic needs separable input");
    const FieldSpec& k = f.field();
    if (f.degree() == 3) {
        // monicize: (X, Y) = (a3 x, a3 y) turns y^2 = f into a monic model
        uint64_t a3 = f.lc();
        return ec_j({Poly(k, {k.mul(f.coeff(0), k.mul(a3, a3)), k.mul(f.coeff(1), a3),
                              f.coeff(2), 1})});
    }
    if (f.degree() != 4) throw std::invalid_argument("j_of_quartic needs degree 3 or 4");
    if (k.p() == 3) return j_via_splitting_field(f);
    // binary-quartic invariants: Jacobian is Y^2 = X^3 - 27 I X - 27 J
    auto C = [&](long long v) { return k.from_int(v).code; };
    uint64_t a = f.coeff(4), b = f.coeff(3), c = f.coeff(2), d = f.coeff(1), e = f.coeff(0);
    uint64_t I = k.add(k.sub(k.mul(C(12), k.mul(a, e)), k.mul(C(3), k.mul(b, d))),
                       k.mul(c, c));
    uint64_t J = k.sub(k.sub(k.sub(k.add(k.mul(C(72), k.mul(a, k.mul(c, e))),
                                         k.mul(C(9), k.mul(b, k.mul(c, d)))),
                                   k.mul(C(27), k.mul(a, k.mul(d, d)))),
                             k.mul(C(27), k.mul(e, k.mul(b, b)))),
                       k.mul(C(2), k.mul(c, k.mul(c, c))));
    uint64_t I3 = k.mul(I, k.mul(I, I));
    uint64_t den = k.sub(k.mul(C(4), I3), k.mul(J, J)); // 27 * disc(f), nonzero
    return k.div(k.mul(C(6912), I3), den);
}

} // namespace medgenus
