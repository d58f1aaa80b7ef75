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

#include "medgenus/genus2.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include "medgenus/pgl2.hpp"

namespace medgenus {

Genus2Curve make_genus2(const Poly& f) {
    if (f.degree() != 5 && f.degree() != 6)
        throw std::invalid_argument("genus-2 model needs a quintic or sextic");
    if (!is_separable(f)) throw std::invalid_argument("genus-2 model must be separable");
    Genus2Curve C{HyperellipticModel{f}, 0, 0};
    C.count = count_points(C.model);
    C.defect = weil_serre(f.field().q(), 2) - C.count;
    return C;
}

std::optional<std::tuple<Genus2Curve, EllipticCurve, EllipticCurve>>
bielliptic_curve(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
    if (a.field == nullptr || a.field != b.field || a.field != c.field)
        throw std::invalid_argument("bielliptic_curve arguments must share one field");
    if (c.is_zero()) throw std::invalid_argument("bielliptic_curve needs c != 0");
    const FieldSpec& k = *a.field;

    Poly sextic(k, {c.code, 0, b.code, 0, a.code, 0, 1});
    if (!is_separable(sextic)) return std::nullopt;

    // quotients by x -> -x: u = x^2 gives E1 directly; u = 1/x^2 gives
    // y^2 = c u^3 + b u^2 + a u + 1, monicized by v = cu, y -> cy.
    EllipticCurve E1 = make_elliptic(Poly(k, {c.code, b.code, a.code, 1}));
    EllipticCurve E2 = make_elliptic(
        Poly(k, {k.mul(c.code, c.code), k.mul(a.code, c.code), b.code, 1}));

    Genus2Curve C = make_genus2(sextic);
    int64_t n1 = count_points({E1.g});
    int64_t n2 = count_points({E2.g});
    if (C.count != n1 + n2 - static_cast<int64_t>(k.q() + 1))
        throw std::logic_error("bielliptic count identity violated for " + sextic.pretty());
    return std::make_tuple(std::move(C), std::move(E1), std::move(E2));
}

std::optional<Genus2Curve> richelot_step(const Genus2Curve& C, const QuadraticSplitting& S) {
    const FieldSpec& k = C.field();
    const std::array<const Poly*, 3> G{&S.G1, &S.G2, &S.G3};
    for (const Poly* g : G)
        if (g->field_ptr() != &k || g->degree() < 1 || g->degree() > 2)
            throw std::invalid_argument("splitting factors must be linear or quadratic");
    if (S.G1 * S.G2 * S.G3 != C.model.f)
        throw std::invalid_argument("splitting does not multiply back to the model");

    // delta = det of the coefficient rows (g2, g1, g0); zero for a split
    // Jacobian, where no Richelot codomain curve exists
    std::array<std::array<uint64_t, 3>, 3> m;
    for (int i = 0; i < 3; ++i) m[i] = {G[i]->coeff(2), G[i]->coeff(1), G[i]->coeff(0)};
    auto det2 = [&](uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
        return k.sub(k.mul(a, d), k.mul(b, c));
    };
    uint64_t delta = k.add(
        k.sub(k.mul(m[0][0], det2(m[1][1], m[1][2], m[2][1], m[2][2])),
              k.mul(m[0][1], det2(m[1][0], m[1][2], m[2][0], m[2][2]))),
        k.mul(m[0][2], det2(m[1][0], m[1][1], m[2][0], m[2][1])));
    if (delta == 0) return std::nullopt;

    auto bracket = [](const Poly& u, const Poly& v) {
        return u.derivative() * v - u * v.derivative();
    };
    Poly H1 = bracket(S.G2, S.G3);
    Poly H2 = bracket(S.G3, S.G1);
    Poly H3 = bracket(S.G1, S.G2);
    // with this orientation of the brackets the codomain carries a global
    // minus sign; dropping it would hand back the wrong quadratic twist
    // whenever -delta is a nonsquare
    Poly fp = (H1 * H2 * H3).scaled(k.neg(delta));
    if (fp.degree() < 5 || !is_separable(fp))
        throw std::logic_error("degenerate Richelot codomain for " + C.model.f.pretty());

    Genus2Curve C2 = make_genus2(fp);
    if (C2.count != C.count)
        throw std::logic_error("Richelot count preservation violated for " + C.model.f.pretty());
    return C2;
}

std::vector<QuadraticSplitting> all_splittings(const Genus2Curve& C) {
    const Poly& f = C.model.f;
    Factorization F = factor_separable(f);
    for (const Poly& g : F.factors)
        if (g.degree() > 2) return {};
    const int nf = static_cast<int>(F.factors.size());

    std::vector<QuadraticSplitting> out;
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_deg;
    // canonical set-partition walk: a factor joins an existing block or opens
    // the next one, so each unordered triple is produced exactly once
    std::function<void(int)> rec = [&](int i) {
        if (i == nf) {
            if (blocks.size() != 3) return;
            std::array<Poly, 3> G;
            for (int j = 0; j < 3; ++j) {
                G[j] = Poly(f.field(), {1});
                for (int fi : blocks[j]) G[j] = G[j] * F.factors[fi];
            }
            std::sort(G.begin(), G.end());
            G[0] = G[0].scaled(F.lc);
            out.push_back({G[0], G[1], G[2]});
            return;
        }
        int d = F.factors[i].degree();
        for (size_t j = 0; j < blocks.size(); ++j) {
            if (block_deg[j] + d > 2) continue;
            blocks[j].push_back(i);
            block_deg[j] += d;
            rec(i + 1);
            block_deg[j] -= d;
            blocks[j].pop_back();
        }
        if (blocks.size() < 3) {
            blocks.push_back({i});
            block_deg.push_back(d);
            rec(i + 1);
            block_deg.pop_back();
            blocks.pop_back();
        }
    };
    rec(0);

    std::sort(out.begin(), out.end(), [](const QuadraticSplitting& x, const QuadraticSplitting& y) {
        if (x.G1 != y.G1) return x.G1 < y.G1;
        if (x.G2 != y.G2) return x.G2 < y.G2;
        return x.G3 < y.G3;
    });
    return out;
}

namespace {

// the square rescaling of g with the smallest leading coefficient; squares act
// simply transitively on the square class of lc(g), so the result is unique
Poly square_scaled_min(const Poly& g) {
    const FieldSpec& k = g.field();
    uint64_t best_s = 1, best_l = g.lc();
    for (uint64_t e = 2; e < k.q(); ++e) {
        uint64_t s = k.mul(e, e);
        uint64_t l = k.mul(s, g.lc());
        if (l < best_l) {
            best_l = l;
            best_s = s;
        }
    }
    return best_s == 1 ? g : g.scaled(best_s);
}

// minimum of square_scaled_min(f(ux + t)) over the affine group
Poly affine_canonical(const Poly& f) {
    const FieldSpec& k = f.field();
    std::optional<Poly> best;
    for (uint64_t u = 1; u < k.q(); ++u)
        for (uint64_t t = 0; t < k.q(); ++t) {
            Poly cand = square_scaled_min(f.composed_linear(u, t));
            if (!best || cand < *best) best = std::move(cand);
        }
    return *best;
}

} // namespace

Poly genus2_canonical(const Poly& f) {
    if ((f.degree() != 5 && f.degree() != 6) || !is_separable(f))
        throw std::invalid_argument("genus2_canonical needs a separable quintic/sextic");
    const FieldSpec& k = f.field();
    // Bruhat decomposition: every PGL2 element is affine or affine o (x -> 1/x)
    // o translation, and the x -> ux scale slides past the inversion up to a
    // square factor; so the affine minimum of f and of each inverted translate
    // covers the whole group
    Poly best = affine_canonical(f);
    PGL2Element w(k, 0, 1, 1, 0);
    for (uint64_t t = 0; t < k.q(); ++t) {
        Poly g = moebius_act(w, f.shifted(t), 6);
        if (g.degree() < 5) continue; // cannot happen for separable f; guard
        Poly cand = affine_canonical(g);
        if (cand < best) best = std::move(cand);
    }
    return best;
}

bool genus2_isomorphic(const Poly& f, const Poly& g) {
    for (const Transformation& t : transformations_matching(f, g, 6))
        if (f.field().chi(t.scalar) == 1) return true;
    return false;
}

namespace {

struct Pool {
    int64_t d_max;
    size_t cap;
    std::map<int64_t, std::set<Poly>> buckets;

    bool add(const Poly& canon, int64_t d) {
        if (d < 0 || d > d_max) return false;
        auto& b = buckets[d];
        if (b.count(canon)) return false;
        if (b.size() >= cap) return false;
        b.insert(canon);
        return true;
    }
};

// all monic separable quintics in both square classes, plus sextics with
// leading coefficient 1 or nu taken up to x-translation
void collect_exhaustive(const FieldSpec& k, int64_t d_max,
                        std::vector<std::pair<Poly, int64_t>>& cands) {
    const uint64_t q = k.q();
    const uint64_t nu = k.nonsquare();
    const int64_t ws = weil_serre(q, 2);

    uint64_t total5 = 1;
    for (int i = 0; i < 5; ++i) total5 *= q;

#ifdef MEDGENUS_OPENMP
#pragma omp parallel
#endif
    {
        std::vector<std::pair<Poly, int64_t>> local;
#ifdef MEDGENUS_OPENMP
#pragma omp for schedule(dynamic, 4096) nowait
#endif
        for (int64_t sidx = 0; sidx < static_cast<int64_t>(total5); ++sidx) {
            uint64_t v = static_cast<uint64_t>(sidx);
            std::vector<uint64_t> c(6, 1);
            for (int i = 0; i < 5; ++i) {
                c[i] = v % q;
                v /= q;
            }
            Poly f(k, std::move(c));
            if (!is_separable(f)) continue;
            int64_t n = count_points({f});
            if (int64_t d = ws - n; d >= 0 && d <= d_max) local.emplace_back(f, d);
            // odd-degree twist: counts of f and nu*f sum to 2(q + 1)
            int64_t n2 = 2 * static_cast<int64_t>(q + 1) - n;
            if (int64_t d = ws - n2; d >= 0 && d <= d_max) local.emplace_back(f.scaled(nu), d);
        }

#ifdef MEDGENUS_OPENMP
#pragma omp for schedule(dynamic, 4096) nowait
#endif
        for (int64_t sidx = 0; sidx < static_cast<int64_t>(total5 * q); ++sidx) {
            uint64_t v = static_cast<uint64_t>(sidx);
            std::vector<uint64_t> c(7);
            for (int i = 0; i < 6; ++i) {
                c[i] = v % q;
                v /= q;
            }
            for (uint64_t lead : {uint64_t{1}, nu}) {
                c[6] = lead;
                Poly f(k, c);
                bool minimal = true;
                for (uint64_t t = 1; t < q && minimal; ++t)
                    if (f.composed_linear(1, t) < f) minimal = false;
                if (!minimal) continue;
                if (!is_separable(f)) continue;
                int64_t d = ws - count_points({f});
                if (d >= 0 && d <= d_max) local.emplace_back(std::move(f), d);
            }
        }

#ifdef MEDGENUS_OPENMP
#pragma omp critical
#endif
        cands.insert(cands.end(), local.begin(), local.end());
    }
}

void canonicalize_into(const std::vector<std::pair<Poly, int64_t>>& cands, Pool& pool) {
    // two stages: the affine form is ~10x cheaper than the full group minimum
    // and already collapses most duplicates, so the full canonicalization only
    // runs once per distinct affine class
    std::vector<Poly> akey(cands.size(), Poly());
#ifdef MEDGENUS_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (int64_t i = 0; i < static_cast<int64_t>(cands.size()); ++i)
        akey[static_cast<size_t>(i)] = affine_canonical(cands[static_cast<size_t>(i)].first);

    std::map<Poly, size_t> index;
    std::vector<Poly> distinct;
    for (const Poly& a : akey)
        if (index.emplace(a, distinct.size()).second) distinct.push_back(a);

    std::vector<Poly> full(distinct.size(), Poly());
#ifdef MEDGENUS_OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (int64_t j = 0; j < static_cast<int64_t>(distinct.size()); ++j)
        full[static_cast<size_t>(j)] = genus2_canonical(distinct[static_cast<size_t>(j)]);

    for (size_t i = 0; i < cands.size(); ++i)
        pool.add(full[index.find(akey[i])->second], cands[i].second);
}

// defect of y^2 = x^3 + A x^2 + B x + C for every (A, B, C), 255 marking the
// inseparable cubics; two lookups then price a bielliptic triple in O(1)
std::vector<uint8_t> cubic_defect_table(const FieldSpec& k) {
    const uint64_t q = k.q();
    const int64_t ws1 = weil_serre(q, 1);
    std::vector<uint8_t> tab(q * q * q, 255);
#ifdef MEDGENUS_OPENMP
#pragma omp parallel for schedule(dynamic, 1024)
#endif
    for (int64_t sidx = 0; sidx < static_cast<int64_t>(q * q * q); ++sidx) {
        uint64_t idx = static_cast<uint64_t>(sidx);
        uint64_t C = idx % q, B = (idx / q) % q, A = idx / (q * q);
        Poly g(k, {C, B, A, 1});
        if (!is_separable(g)) continue;
        int64_t d = ws1 - count_points({g});
        tab[idx] = static_cast<uint8_t>(std::min<int64_t>(d, 254));
    }
    return tab;
}

void run_factory(const FieldSpec& k, int64_t d_max, const StreamOptions& opts, Pool& pool) {
    const uint64_t q = k.q();
    if (q > 512) throw std::invalid_argument("FACTORY backend supports q <= 512");
    std::vector<uint8_t> dtab = cubic_defect_table(k);

    // seed with the bielliptic family, priced through the defect table:
    // defect(C) = defect(E1) + defect(E2) by genus additivity
    std::vector<std::pair<Poly, int64_t>> seeds;
    for (uint64_t a = 0; a < q; ++a)
        for (uint64_t b = 0; b < q; ++b)
            for (uint64_t c = 1; c < q; ++c) {
                uint8_t d1 = dtab[(a * q + b) * q + c];
                if (d1 == 255) continue;
                uint8_t d2 = dtab[(b * q + k.mul(a, c)) * q + k.mul(c, c)];
                if (d2 == 255) continue;
                int64_t d = static_cast<int64_t>(d1) + d2;
                if (d > d_max) continue;
                auto built = bielliptic_curve(k.element(a), k.element(b), k.element(c));
                if (!built) continue;
                seeds.emplace_back(std::get<0>(*built).model.f, d);
            }
    canonicalize_into(seeds, pool);

    // close under Richelot steps: counts (hence defects) are preserved, so the
    // walk only discovers new isomorphism classes inside the same buckets
    std::vector<Poly> frontier;
    for (const auto& [d, set] : pool.buckets) frontier.insert(frontier.end(), set.begin(), set.end());
    for (int depth = 0; depth < opts.walk_depth && !frontier.empty(); ++depth) {
        std::vector<Poly> next;
        for (const Poly& cf : frontier) {
            Genus2Curve C = make_genus2(cf);
            for (const QuadraticSplitting& S : all_splittings(C)) {
                std::optional<Genus2Curve> C2 = richelot_step(C, S);
                if (!C2) continue;
                Poly canon = genus2_canonical(C2->model.f);
                if (pool.add(canon, C2->defect)) next.push_back(std::move(canon));
            }
        }
        frontier = std::move(next);
    }
}

} // namespace

void small_defect_stream(const FieldSpec& field, int64_t d_max, StreamBackend backend,
                         const std::function<void(const Genus2Curve&)>& fn,
                         const StreamOptions& opts) {
    if (d_max < 0) throw std::invalid_argument("small_defect_stream needs d_max >= 0");
    field.enable_tables();
    Pool pool{d_max, backend == StreamBackend::FACTORY ? opts.bucket_cap : SIZE_MAX, {}};

    if (backend == StreamBackend::EXHAUSTIVE) {
        std::vector<std::pair<Poly, int64_t>> cands;
        collect_exhaustive(field, d_max, cands);
        canonicalize_into(cands, pool);
    } else {
        run_factory(field, d_max, opts, pool);
    }

    for (const auto& [d, set] : pool.buckets)
        for (const Poly& f : set) fn(make_genus2(f));
}

} // namespace medgenus
