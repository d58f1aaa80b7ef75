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

#include "medgenus/search.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "medgenus/orbits.hpp"
#include "medgenus/pgl2.hpp"

namespace medgenus {

CoverRecord make_record(const std::string& tag, const CoverSpec& D, bool complete) {
    const FieldSpec& k = D.field();
    CoverRecord r;
    r.field = &k;
    r.tag = tag;
    r.polys = D.polys;
    for (const HyperellipticModel& m : subcovers(D)) {
        SubcoverInfo s;
        s.poly = m.f;
        s.genus = m.genus();
        s.count = count_points(m);
        s.defect = weil_serre(k.q(), s.genus) - s.count;
        r.subcovers.push_back(std::move(s));
    }
    r.genus = cover_genus(D);
    r.total_count = cover_count(D);
    r.total_defect = cover_defect(D);
    r.complete = complete;
    return r;
}

bool verify_record(const CoverRecord& r, std::string* diagnostic) {
    auto fail = [&](const std::string& why) {
        if (diagnostic) *diagnostic = why;
        return false;
    };
    if (!r.field) return fail("record has no field");
    const FieldSpec& k = *r.field;
    const size_t m = r.polys.size();
    if (m != 2 && m != 3) return fail("expected 2 or 3 defining polynomials");
    for (size_t i = 0; i < m; ++i) {
        if (r.polys[i].field_ptr() != &k)
            return fail("defining polynomial " + std::to_string(i + 1) + " is over the wrong field");
        if (r.polys[i].degree() < 1)
            return fail("defining polynomial " + std::to_string(i + 1) + " is constant");
    }
    CoverSpec D{r.polys};
    std::vector<HyperellipticModel> subs;
    try {
        subs = subcovers(D);
    } catch (const std::exception& e) {
        return fail(std::string("subcover reduction failed: ") + e.what());
    }
    if (subs.size() != r.subcovers.size())
        return fail("expected " + std::to_string(subs.size()) + " subcovers, record has " +
                    std::to_string(r.subcovers.size()));
    unsigned genus_sum = 0;
    int64_t count_sum = 0, defect_sum = 0;
    for (size_t i = 0; i < subs.size(); ++i) {
        const std::string name = "subcover " + std::to_string(i + 1);
        const SubcoverInfo& s = r.subcovers[i];
        if (s.poly != subs[i].f) return fail(name + ": polynomial mismatch");
        if (s.genus != subs[i].genus()) return fail(name + ": genus mismatch");
        int64_t n = count_points(subs[i]);
        if (s.count != n)
            return fail(name + ": count " + std::to_string(s.count) + " != recomputed " +
                        std::to_string(n));
        int64_t d = weil_serre(k.q(), s.genus) - n;
        if (s.defect != d)
            return fail(name + ": defect " + std::to_string(s.defect) + " != recomputed " +
                        std::to_string(d));
        genus_sum += s.genus;
        count_sum += n;
        defect_sum += d;
    }
    if (r.genus != genus_sum) return fail("genus is not the sum of subcover genera");
    int64_t sheets = (int64_t(1) << m) - 2;
    if (r.total_count != count_sum - sheets * int64_t(k.q() + 1))
        return fail("total count breaks the trace-additivity identity");
    if (r.total_defect != defect_sum) return fail("total defect is not the sum of subcover defects");
    if (r.total_defect != weil_serre(k.q(), r.genus) - r.total_count)
        return fail("total defect disagrees with the Weil bound gap");
    if (m == 2 && k.q() <= 512) {
        int64_t fiber = detail::cover_count_fiberwise(D);
        if (fiber != r.total_count)
            return fail("fiberwise count " + std::to_string(fiber) + " != total count " +
                        std::to_string(r.total_count));
    }
    return true;
}

namespace {

int64_t default_budget(const FieldSpec& k, unsigned g) {
    // anything strictly better than the trivial q+1-point curve
    return int64_t(g) * int64_t(isqrt_u64(4 * k.q()));
}

int64_t model_defect(const Poly& f) { return defect({f}); }

/// Serializes emission policy: only strict improvements pass (every candidate
/// under the initial budget with emit_all), each checked by verify_record.
/// Records are buffered so the completion flag of the finished run can be
/// stamped on them before they reach the sink.
class Emitter {
public:
    Emitter(const FieldSpec& k, std::string tag, unsigned genus, const SearchOptions& o,
            const RecordSink& sink)
        : tag_(std::move(tag)),
          budget_(o.defect_limit >= 0 ? o.defect_limit : default_budget(k, genus)),
          best_(budget_ + 1),
          emit_all_(o.emit_all),
          stop_early_(!o.to_completion),
          sink_(sink) {}

    int64_t budget() const { return budget_; }
    int64_t best() const { return best_; }
    bool emit_all() const { return emit_all_; }
    /// Largest total defect a future emission may have.
    int64_t limit() const { return emit_all_ ? budget_ : best_ - 1; }
    /// Cheap pre-filter so strategies skip the full record build.
    bool interesting(int64_t total) const { return total <= limit(); }
    /// Without run-to-completion the strategy may stop at the first find.
    bool satisfied() const { return stop_early_ && !pending_.empty(); }

    void consider(const CoverSpec& D, std::optional<int64_t> claimed = std::nullopt) {
        CoverRecord r = make_record(tag_, D, false);
        if (claimed && *claimed != r.total_defect)
            throw std::logic_error(tag_ + ": bookkept defect " + std::to_string(*claimed) +
                                   " disagrees with audited defect " +
                                   std::to_string(r.total_defect));
        bool keep = emit_all_ ? r.total_defect <= budget_ : r.total_defect < best_;
        best_ = std::min(best_, r.total_defect);
        if (!keep) return;
        std::string diag;
        if (!verify_record(r, &diag))
            throw std::logic_error(tag_ + ": emitted record fails verification: " + diag);
        pending_.push_back(std::move(r));
    }

    StrategyResult finalize(bool complete) {
        StrategyResult res;
        res.complete = complete;
        res.emitted = pending_.size();
        res.best_defect = best_ <= budget_ ? best_ : -1;
        for (CoverRecord& r : pending_) {
            r.complete = complete;
            sink_(r);
        }
        pending_.clear();
        return res;
    }

private:
    std::string tag_;
    int64_t budget_;
    int64_t best_;
    bool emit_all_;
    bool stop_early_;
    const RecordSink& sink_;
    std::vector<CoverRecord> pending_;
};

struct StreamCurves {
    std::vector<Genus2Curve> curves; // nondecreasing defect
    bool exhaustive;                 // backend covers the whole family
};

StreamCurves collect_stream(const FieldSpec& k, int64_t d_max) {
    StreamBackend b = k.q() <= 13 ? StreamBackend::EXHAUSTIVE : StreamBackend::FACTORY;
    StreamCurves s{{}, b == StreamBackend::EXHAUSTIVE};
    small_defect_stream(k, std::max<int64_t>(d_max, 0), b,
                        [&](const Genus2Curve& C) { s.curves.push_back(C); });
    return s;
}

/// Factorizations f = p1 p2 with deg p1 = 3 (unordered: the smallest
/// irreducible factor stays in p1, which also carries the leading constant).
std::vector<std::pair<Poly, Poly>> cubic_split_pairs(const Poly& f) {
    auto fac = factor_separable(f);
    const size_t n = fac.factors.size();
    const FieldSpec& k = f.field();
    std::vector<std::pair<Poly, Poly>> out;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!(mask & 1)) continue;
        int d = 0;
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1) d += fac.factors[i].degree();
        if (d != 3) continue;
        Poly p1(k, {fac.lc});
        Poly p2(k, {1});
        for (size_t i = 0; i < n; ++i) {
            Poly& part = (mask >> i & 1) ? p1 : p2;
            part = part * fac.factors[i];
        }
        out.emplace_back(std::move(p1), std::move(p2));
    }
    return out;
}

/// Factorizations f = fq * g with fq monic of degree 4; g (degree 1 or 2)
/// carries the leading constant.
struct SplitQuartic {
    Poly f, g;
};
std::vector<SplitQuartic> quartic_splits(const Poly& model) {
    auto fac = factor_separable(model);
    const size_t n = fac.factors.size();
    const FieldSpec& k = model.field();
    std::vector<SplitQuartic> out;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        int d = 0;
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1) d += fac.factors[i].degree();
        if (d != 4) continue;
        Poly fq(k, {1});
        Poly g(k, {fac.lc});
        for (size_t i = 0; i < n; ++i) {
            Poly& part = (mask >> i & 1) ? fq : g;
            part = part * fac.factors[i];
        }
        out.push_back({std::move(fq), std::move(g)});
    }
    return out;
}

/// A degree-6 model of the same curve (empty when every point of P^1 is a
/// branch point, which only happens at q = 5).
Poly as_sextic(const Poly& f) {
    if (f.degree() == 6) return f;
    const FieldSpec& k = f.field();
    const PGL2Element w(k, 0, 1, 1, 0);
    for (uint64_t t = 0; t < k.q(); ++t) {
        if (f.eval(t) == 0) continue;
        return moebius_act(w, f.shifted(t), 6);
    }
    return Poly(k);
}

/// Monic polynomials of one degree with lower coefficients drawn from `codes`,
/// in a fixed (odometer) order.
void for_each_monic(const FieldSpec& k, int deg, const std::vector<uint64_t>& codes,
                    const std::function<void(const Poly&)>& fn) {
    std::vector<size_t> idx(deg, 0);
    std::vector<uint64_t> c(deg + 1, 0);
    c[deg] = 1;
    for (;;) {
        for (int i = 0; i < deg; ++i) c[i] = codes[idx[i]];
        fn(Poly(k, c));
        int i = deg - 1;
        while (i >= 0 && ++idx[i] == codes.size()) idx[i--] = 0;
        if (i < 0) return;
    }
}

std::vector<uint64_t> all_codes(const FieldSpec& k) {
    std::vector<uint64_t> v(k.q());
    for (uint64_t i = 0; i < k.q(); ++i) v[i] = i;
    return v;
}

/// Defects of y^2 = f and of its nonsquare twist, from one point count
/// (the twist pair always sums to 2(q+1)).
std::array<int64_t, 2> twin_defects(const Poly& f, unsigned genus) {
    const FieldSpec& k = f.field();
    int64_t ws = weil_serre(k.q(), genus);
    int64_t n = count_points({f});
    return {ws - n, ws - (2 * int64_t(k.q() + 1) - n)};
}

} // namespace

// ---------------------------------------------------------------------------
// genus 4
// ---------------------------------------------------------------------------

StrategyResult genus4_scan(const FieldSpec& k, const SearchOptions& o, const RecordSink& sink) {
    k.enable_tables();
    Emitter em(k, "G4.SCAN", 4, o, sink);
    StreamCurves stream = collect_stream(k, em.budget());
    bool complete = stream.exhaustive;
    for (const Genus2Curve& C : stream.curves) {
        if (em.satisfied()) {
            complete = false;
            break;
        }
        if (C.defect > em.limit()) break; // sorted stream: nothing below can improve
        Poly f = as_sextic(C.model.f);
        if (f.degree() != 6) continue;
        for (const auto& [f1, f2] : cubic_split_pairs(f)) {
            for (uint64_t a = 0; a < k.q(); ++a) {
                if (f.eval(a) == 0) continue;
                Poly xa(k, {k.neg(a), 1});
                Poly p1 = xa * f1;
                Poly p2 = xa * f2;
                int64_t total = C.defect + model_defect(p1) + model_defect(p2);
                if (em.interesting(total)) em.consider({{p1, p2}}, total);
            }
        }
    }
    return em.finalize(complete);
}

// ---------------------------------------------------------------------------
// genus 5
// ---------------------------------------------------------------------------

StrategyResult genus5_exhaustive(const FieldSpec& k, const SearchOptions& o,
                                 const RecordSink& sink) {
    k.enable_tables();
    Emitter em(k, "G5.EXH", 5, o, sink);
    const uint64_t q = k.q(), nu = k.nonsquare();

    std::vector<Poly> cofactors; // monic linear and quadratic candidates
    for (uint64_t b = 0; b < q; ++b) cofactors.emplace_back(k, std::vector<uint64_t>{b, 1});
    for (uint64_t c = 0; c < q; ++c)
        for (uint64_t b = 0; b < q; ++b) cofactors.emplace_back(k, std::vector<uint64_t>{c, b, 1});

    bool complete = true;
    struct Kept {
        Poly g; // class constant folded in
        int64_t d;
    };
    enumerate_orbit_reps(k, [&](const OrbitRep& rep) {
        if (em.satisfied()) {
            complete = false;
            return;
        }
        const Poly& f = rep.f; // monic separable cubic or quartic
        std::vector<Kept> kept;
        for (const Poly& gm : cofactors) {
            // one linear polynomial may join only a quartic (degree must stay >= 5)
            if (f.degree() + gm.degree() < 5) continue;
            Poly fg = f * gm;
            if (!is_separable(fg)) continue;
            auto d = twin_defects(fg, 2);
            if (d[0] <= em.budget()) kept.push_back({gm, d[0]});
            if (d[1] <= em.budget()) kept.push_back({gm.scaled(nu), d[1]});
        }
        std::sort(kept.begin(), kept.end(),
                  [](const Kept& a, const Kept& b) { return a.d != b.d ? a.d < b.d : a.g < b.g; });
        for (size_t i = 0; i < kept.size(); ++i) {
            if (2 * kept[i].d > em.limit()) break;
            for (size_t j = i + 1; j < kept.size(); ++j) {
                if (kept[i].d + kept[j].d > em.limit()) break;
                Poly mid = kept[i].g * kept[j].g;
                if (mid.degree() < 3 || !is_separable(mid)) continue;
                int64_t total = kept[i].d + kept[j].d + model_defect(mid);
                if (em.interesting(total))
                    em.consider({{f * kept[i].g, f * kept[j].g}}, total);
            }
        }
    });
    return em.finalize(complete);
}

StrategyResult genus5_match(const FieldSpec& k, const SearchOptions& o, const RecordSink& sink) {
    k.enable_tables();
    Emitter em(k, "G5.MATCH", 5, o, sink);
    StreamCurves stream = collect_stream(k, em.budget() / 2 + 1);
    struct Entry {
        Poly f, g;
        int64_t d; // defect of the whole curve y^2 = f g
    };
    std::map<std::pair<uint64_t, std::vector<int>>, std::vector<Entry>> index;
    bool complete = stream.exhaustive;
    for (const Genus2Curve& C : stream.curves) {
        if (em.satisfied()) {
            complete = false;
            break;
        }
        if (2 * C.defect > em.limit()) break; // stopping rule: pairs below are no better
        for (const SplitQuartic& sp : quartic_splits(C.model.f)) {
            auto key = std::make_pair(j_of_quartic(sp.f), factorization_degrees(sp.f));
            std::vector<Entry>& bucket = index[key];
            for (const Entry& e : bucket) {
                for (const Transformation& t : transformations_matching(e.f, sp.f, 4)) {
                    if (k.chi(t.scalar) != 1) continue; // need a square multiple
                    Poly gp = moebius_act(t.alpha, e.g, 2);
                    if (gp.degree() < 1) continue;
                    Poly mid = sp.g * gp;
                    if (mid.degree() < 3 || !is_separable(mid)) continue;
                    Poly other = sp.f * gp;
                    if (!is_separable(other)) continue;
                    // e.d transports through alpha: isomorphic models, no recount
                    int64_t total = C.defect + e.d + model_defect(mid);
                    if (em.interesting(total)) em.consider({{sp.f * sp.g, other}}, total);
                }
            }
            bucket.push_back({sp.f, sp.g, C.defect});
        }
    }
    return em.finalize(complete);
}

// ---------------------------------------------------------------------------
// genus 6
// ---------------------------------------------------------------------------

namespace detail {
std::vector<Poly> genus6_frames(const FieldSpec& k) {
    std::vector<Poly> frames;
    frames.emplace_back(k, std::vector<uint64_t>{0, k.neg(1), 1}); // x(x-1)
    auto codes = all_codes(k);
    for (int deg : {2, 3}) {
        std::optional<Poly> found;
        for_each_monic(k, deg, codes, [&](const Poly& f) {
            if (is_irreducible(f) && (!found || f < *found)) found = f;
        });
        frames.push_back(*found);
    }
    return frames;
}
} // namespace detail

StrategyResult genus6_fixed_frame(const FieldSpec& k, FrameMode mode, const SearchOptions& o,
                                  const RecordSink& sink) {
    k.enable_tables();
    Emitter em(k, mode == FrameMode::FULL ? "G6.EXH" : "G6.SUBFIELD", 6, o, sink);
    std::vector<uint64_t> codes;
    if (mode == FrameMode::SUBFIELD) {
        if (k.n() == 1)
            throw std::invalid_argument("subfield mode needs an extension field");
        unsigned m = 1;
        for (unsigned d = 1; d < k.n(); ++d)
            if (k.n() % d == 0) m = d; // largest proper subfield
        codes = k.subfield_codes(m);
    } else {
        codes = all_codes(k);
    }
    const uint64_t nu = k.nonsquare();
    struct Entry {
        Poly f;
        int64_t d;
    };
    bool complete = true;
    for (const Poly& gi : detail::genus6_frames(k)) {
        if (em.satisfied()) {
            complete = false;
            break;
        }
        std::vector<Entry> bucket;
        for (int deg : {2, 3}) {
            if (gi.degree() + deg < 5) continue; // the subcover must have genus 2
            for_each_monic(k, deg, codes, [&](const Poly& f) {
                Poly gf = gi * f;
                if (!is_separable(gf)) return;
                auto d = twin_defects(gf, 2);
                if (d[0] <= em.budget()) bucket.push_back({f, d[0]});
                if (d[1] <= em.budget()) bucket.push_back({f.scaled(nu), d[1]});
            });
        }
        std::sort(bucket.begin(), bucket.end(),
                  [](const Entry& a, const Entry& b) { return a.d != b.d ? a.d < b.d : a.f < b.f; });
        for (size_t i = 0; i < bucket.size(); ++i) {
            if (2 * bucket[i].d > em.limit()) break;
            for (size_t j = i + 1; j < bucket.size(); ++j) {
                if (bucket[i].d + bucket[j].d > em.limit()) break;
                Poly mid = bucket[i].f * bucket[j].f;
                if (mid.degree() < 5 || !is_separable(mid)) continue;
                int64_t total = bucket[i].d + bucket[j].d + model_defect(mid);
                if (em.interesting(total))
                    em.consider({{gi * bucket[i].f, gi * bucket[j].f}}, total);
            }
        }
    }
    return em.finalize(complete);
}

StrategyResult genus6_stream_match(const FieldSpec& k, const SearchOptions& o,
                                   const RecordSink& sink) {
    k.enable_tables();
    Emitter em(k, "G6.STREAM", 6, o, sink);
    StreamCurves stream = collect_stream(k, em.budget() / 2 + 1);
    std::vector<Poly> frames = detail::genus6_frames(k);
    const uint64_t nu = k.nonsquare();
    struct Entry {
        Poly f;
        int64_t d;
    };
    std::array<std::vector<Entry>, 3> buckets;
    std::array<std::set<Poly>, 3> seen;
    bool complete = stream.exhaustive;
    for (const Genus2Curve& C : stream.curves) {
        if (em.satisfied()) {
            complete = false;
            break;
        }
        if (2 * C.defect > em.limit()) break;
        Poly f6 = as_sextic(C.model.f);
        if (f6.degree() != 6) continue;
        for (const auto& pair : cubic_split_pairs(f6)) {
            for (int orient = 0; orient < 2; ++orient) {
                const Poly& ha = orient ? pair.second : pair.first;
                const Poly& hb = orient ? pair.first : pair.second;
                size_t fi = factorization_degrees(ha).size() == 3   ? 0
                            : factorization_degrees(ha).size() == 2 ? 1
                                                                    : 2;
                for (const Transformation& t : transformations_matching(ha, frames[fi], 3)) {
                    // the transformed model is t.scalar * g_i * act(alpha, hb);
                    // fold the scalar into the cofactor, then normalize the
                    // cofactor to its square-class representative
                    Poly fr = moebius_act(t.alpha, hb, 3).scaled(t.scalar);
                    if (fr.degree() < 2) continue;
                    Poly fe = k.chi(fr.lc()) == 1 ? fr.monic() : fr.monic().scaled(nu);
                    if (!is_separable(frames[fi] * fe)) continue;
                    if (!seen[fi].insert(fe).second) continue;
                    for (const Entry& e : buckets[fi]) {
                        if (C.defect + e.d > em.limit()) continue;
                        Poly mid = fe * e.f;
                        if (mid.degree() < 5 || !is_separable(mid)) continue;
                        int64_t total = C.defect + e.d + model_defect(mid);
                        if (em.interesting(total))
                            em.consider({{frames[fi] * fe, frames[fi] * e.f}}, total);
                    }
                    buckets[fi].push_back({fe, C.defect});
                }
            }
        }
    }
    return em.finalize(complete);
}

StrategyResult genus6_order3(const FieldSpec& k, const SearchOptions& o, const RecordSink& sink) {
    k.enable_tables();
    Emitter em(k, "G6.ORDER3", 6, o, sink);
    StreamCurves stream = collect_stream(k, em.budget() / 3 + 1);
    bool complete = stream.exhaustive;
    for (const Genus2Curve& C : stream.curves) {
        if (em.satisfied()) {
            complete = false;
            break;
        }
        if (3 * C.defect > em.limit()) break;
        Poly f = as_sextic(C.model.f);
        if (f.degree() != 6) continue;
        for (const auto& pair : cubic_split_pairs(f)) {
            for (int orient = 0; orient < 2; ++orient) {
                const Poly& f1 = orient ? pair.second : pair.first;
                const Poly& f2 = orient ? pair.first : pair.second;
                if (f1.degree() != 3 || f2.degree() != 3) continue;
                for (const Transformation& t : transformations_matching(f1, f2, 3)) {
                    const PGL2Element& mu = t.alpha;
                    if (!pgl2_order3_identity(mu)) continue;
                    // f2 = e * (cx+d)^3 f1(mu), so e inverts the matching scalar
                    uint64_t e = k.inv(t.scalar);
                    Poly f3 = moebius_act(mu, f2, 3).scaled(e);
                    uint64_t tr = k.add(mu.a(), mu.d());
                    uint64_t rhs = k.neg(k.mul(k.pow(e, 3), k.pow(tr, 9)));
                    if (moebius_act(mu, f3, 3).scaled(e) != f1.scaled(rhs))
                        throw std::logic_error(
                            "G6.ORDER3: order-3 closure identity violated");
                    if (k.chi(k.neg(k.mul(e, k.pow(tr, 3)))) != 1) continue;
                    if (!is_separable(f1 * f2 * f3)) continue;
                    // all three subcovers are models of C itself
                    int64_t total = 3 * C.defect;
                    if (em.interesting(total)) em.consider({{f1 * f2, f2 * f3}}, total);
                }
            }
        }
    }
    return em.finalize(complete);
}

// ---------------------------------------------------------------------------
// genus 7
// ---------------------------------------------------------------------------

StrategyResult genus7_chain(const FieldSpec& k, const SearchOptions& o, const RecordSink& sink) {
    k.enable_tables();
    Emitter em(k, "G7.CHAIN", 7, o, sink);
    const uint64_t q = k.q(), nu = k.nonsquare();
    const Poly x(k, {0, 1});
    const Poly xm1(k, {k.neg(1), 1});

    // Phase 1: quadratics h coprime to x(x-1), with the defects of all four
    // twists of y^2 = s'(x-1)h and y^2 = s'x(x-1)h.
    struct Quad {
        Poly h;
        std::array<int64_t, 2> dA; // y^2 = s'(x-1)h per square class of s'
        std::array<int64_t, 2> dB; // y^2 = s'x(x-1)h
        int64_t c;                 // min dA + min dB, the pairing lower bound
    };
    std::vector<Quad> quads;
    for_each_monic(k, 2, all_codes(k), [&](const Poly& h) {
        if (!is_separable(h) || h.eval(0) == 0 || h.eval(1) == 0) return;
        Quad e{h, twin_defects(xm1 * h, 1), twin_defects(x * xm1 * h, 1), 0};
        e.c = std::min(e.dA[0], e.dA[1]) + std::min(e.dB[0], e.dB[1]);
        quads.push_back(std::move(e));
    });
    std::sort(quads.begin(), quads.end(),
              [](const Quad& a, const Quad& b) { return a.c != b.c ? a.c < b.c : a.h < b.h; });

    // Phase 2: pairs (g1, g2) with the eight constant-class combinations.
    const std::array<uint64_t, 2> cls = {1, nu};
    bool complete = true;
    for (size_t i = 0; i < quads.size(); ++i) {
        if (em.satisfied()) {
            complete = false;
            break;
        }
        if (2 * quads[i].c > em.limit()) break;
        for (size_t j = i + 1; j < quads.size(); ++j) {
            if (quads[i].c + quads[j].c > em.limit()) break;
            const Quad& A = quads[i];
            const Quad& B = quads[j];
            Poly g12 = A.h * B.h;
            if (!is_separable(g12)) continue;
            std::array<std::optional<int64_t>, 2> dmid, dtop; // per class, lazily counted
            for (int bs = 0; bs < 8; ++bs) {
                int s1 = bs & 1, s2 = bs >> 1 & 1, s = bs >> 2 & 1;
                int64_t partial = A.dA[s1] + B.dA[s2] + A.dB[s ^ s1] + B.dB[s ^ s2];
                if (partial > em.limit()) continue;
                int c12 = s1 ^ s2;
                if (!dmid[c12]) dmid[c12] = model_defect(g12.scaled(cls[c12]));
                if (partial + *dmid[c12] > em.limit()) continue;
                int ctop = s ^ s1 ^ s2;
                if (!dtop[ctop]) dtop[ctop] = model_defect((x * g12).scaled(cls[ctop]));
                int64_t total = partial + *dmid[c12] + *dtop[ctop];
                if (!em.interesting(total)) continue;
                Poly f1 = (xm1 * A.h).scaled(cls[s1]);
                Poly f2 = (xm1 * B.h).scaled(cls[s2]);
                Poly f3 = x.scaled(cls[s]);
                em.consider({{f1, f2, f3}}, total);
            }
        }
    }
    return em.finalize(complete);
}

namespace {

/// Defect table for the Legendre curves y^2 = x(x-1)(x-lambda): entry
/// [lambda][cls] is the defect of the curve scaled by a constant of that
/// square class (0 = square).
using LambdaTable = std::vector<std::array<int64_t, 2>>;

LambdaTable legendre_table(const FieldSpec& k) {
    // lambda in {0, 1} is degenerate; a huge (but overflow-safe) sentinel keeps
    // those entries out of every minimum
    LambdaTable tab(k.q(), {int64_t(1) << 30, int64_t(1) << 30});
    for (uint64_t lam = 2; lam < k.q(); ++lam) {
        Poly f(k, {0, lam, k.neg(k.add(1, lam)), 1}); // x(x-1)(x-lambda)
        tab[lam] = twin_defects(f, 1);
    }
    return tab;
}

/// Defect of y^2 = s (x-r1)(x-r2)(x-r3), distinct roots, via the Legendre
/// table: shift r1 to 0 and scale r2 to 1.
int64_t cubic_lookup(const FieldSpec& k, const LambdaTable& tab, uint64_t s, uint64_t r1,
                     uint64_t r2, uint64_t r3) {
    uint64_t d21 = k.sub(r2, r1);
    uint64_t lam = k.div(k.sub(r3, r1), d21);
    return tab[lam][k.chi(k.mul(s, d21)) == 1 ? 0 : 1];
}

uint64_t cubic_lambda(const FieldSpec& k, uint64_t r1, uint64_t r2, uint64_t r3) {
    return k.div(k.sub(r3, r1), k.sub(r2, r1));
}

/// Defect of y^2 = s (x-r1)(x-r2)(x-r3)(x-r4): the substitution
/// u = 1/(x - r3) turns the quartic into the cubic with roots 1/(r_i - r3),
/// i = 1, 2, 4, scaled by s (r3-r1)(r3-r2)(r3-r4).
int64_t quartic_lookup(const FieldSpec& k, const LambdaTable& tab, uint64_t s, uint64_t r1,
                       uint64_t r2, uint64_t r3, uint64_t r4) {
    uint64_t c = k.mul(k.mul(k.sub(r3, r1), k.sub(r3, r2)), k.sub(r3, r4));
    return cubic_lookup(k, tab, k.mul(s, c), k.inv(k.sub(r1, r3)), k.inv(k.sub(r2, r3)),
                        k.inv(k.sub(r4, r3)));
}

uint64_t quartic_lambda(const FieldSpec& k, uint64_t r1, uint64_t r2, uint64_t r3, uint64_t r4) {
    return cubic_lambda(k, k.inv(k.sub(r1, r3)), k.inv(k.sub(r2, r3)), k.inv(k.sub(r4, r3)));
}

Poly from_roots(const FieldSpec& k, std::initializer_list<uint64_t> rs, uint64_t s) {
    Poly f(k, {s});
    for (uint64_t r : rs) f = f * Poly(k, {k.neg(r), 1});
    return f;
}

} // namespace

StrategyResult genus7_lambda(const FieldSpec& k, const SearchOptions& o, const RecordSink& sink) {
    k.enable_tables();
    Emitter em(k, "G7.LAMBDA", 7, o, sink);
    const uint64_t nu = k.nonsquare();
    LambdaTable tab = legendre_table(k);
    auto dmin = [&](uint64_t lam) { return std::min(tab[lam][0], tab[lam][1]); };

    std::vector<uint64_t> Lam; // small-defect lambda values, best first
    for (uint64_t lam = 2; lam < k.q(); ++lam)
        if (dmin(lam) <= em.budget()) Lam.push_back(lam);
    std::sort(Lam.begin(), Lam.end(), [&](uint64_t a, uint64_t b) {
        return dmin(a) != dmin(b) ? dmin(a) < dmin(b) : a < b;
    });
    if (Lam.empty()) return em.finalize(true);
    const int64_t m0 = dmin(Lam[0]);

    bool complete = true;
    const std::array<uint64_t, 2> cls = {1, nu};
    for (uint64_t l1 : Lam) {
        if (em.satisfied()) {
            complete = false;
            break;
        }
        if (dmin(l1) + 3 * m0 > em.limit()) break;
        for (uint64_t l2 : Lam) {
            if (dmin(l1) + dmin(l2) + 2 * m0 > em.limit()) break;
            for (uint64_t l3 : Lam) {
                if (dmin(l1) + dmin(l2) + dmin(l3) + m0 > em.limit()) break;
                // roots a of the cross-ratio constraint for {1, b, a, d}:
                // (a-1)(l2 a - l1) = l3 (a - l1)(l2 a - 1)
                uint64_t A = k.mul(l2, k.sub(1, l3));
                uint64_t B = k.sub(k.mul(l3, k.add(1, k.mul(l1, l2))), k.add(l1, l2));
                uint64_t Cc = k.mul(l1, k.sub(1, l3));
                std::vector<uint64_t> as;
                if (A == 0) {
                    if (B != 0) as.push_back(k.neg(k.div(Cc, B)));
                } else {
                    uint64_t disc = k.sub(k.mul(B, B), k.mul(4, k.mul(A, Cc)));
                    if (auto r = k.sqrt(disc)) {
                        uint64_t inv2A = k.inv(k.mul(2, A));
                        as.push_back(k.mul(k.sub(*r, B), inv2A));
                        if (*r != 0) as.push_back(k.mul(k.sub(k.neg(*r), B), inv2A));
                    }
                }
                for (uint64_t l4 : Lam) {
                    if (dmin(l1) + dmin(l2) + dmin(l3) + dmin(l4) > em.limit()) break;
                    for (uint64_t a : as) {
                        uint64_t b = l1, d = k.mul(l2, a);
                        if (a == 0 || d == 1) continue;
                        uint64_t c = k.add(1, k.div(k.sub(d, 1), l4));
                        uint64_t pts[6] = {0, 1, a, b, c, d};
                        bool distinct = true;
                        for (int ii = 0; ii < 6 && distinct; ++ii)
                            for (int jj = ii + 1; jj < 6; ++jj)
                                if (pts[ii] == pts[jj]) {
                                    distinct = false;
                                    break;
                                }
                        if (!distinct) continue;
                        // remaining three subcovers must also have lambda in range
                        uint64_t lf2 = cubic_lambda(k, a, b, c);
                        uint64_t l23 = quartic_lambda(k, 0, b, c, d);
                        uint64_t l12 = quartic_lambda(k, 0, 1, a, c);
                        if (dmin(lf2) > em.budget() || dmin(l23) > em.budget() ||
                            dmin(l12) > em.budget())
                            continue;
                        int64_t floor7 = dmin(l1) + dmin(l2) + dmin(l3) + dmin(l4) +
                                         dmin(lf2) + dmin(l23) + dmin(l12);
                        if (floor7 > em.limit()) continue;
                        for (int bs = 0; bs < 8; ++bs) {
                            uint64_t s1 = cls[bs & 1], s2 = cls[bs >> 1 & 1],
                                     s3 = cls[bs >> 2 & 1];
                            int64_t total =
                                cubic_lookup(k, tab, s1, 0, 1, b) +
                                cubic_lookup(k, tab, s2, a, b, c) +
                                cubic_lookup(k, tab, s3, 0, a, d) +
                                quartic_lookup(k, tab, k.mul(s1, s2), 0, 1, a, c) +
                                quartic_lookup(k, tab, k.mul(s1, s3), 1, b, a, d) +
                                quartic_lookup(k, tab, k.mul(s2, s3), 0, b, c, d) +
                                cubic_lookup(k, tab, k.mul(k.mul(s1, s2), s3), 1, c, d);
                            if (!em.interesting(total)) continue;
                            Poly f1 = from_roots(k, {0, 1, b}, s1);
                            Poly f2 = from_roots(k, {a, b, c}, s2);
                            Poly f3 = from_roots(k, {0, a, d}, s3);
                            em.consider({{f1, f2, f3}}, total);
                        }
                    }
                }
            }
        }
    }
    return em.finalize(complete);
}

// ---------------------------------------------------------------------------
// dispatcher
// ---------------------------------------------------------------------------

StrategyResult run_search(const FieldSpec& field, unsigned genus,
                          const std::vector<std::string>& strategies, const SearchOptions& opts,
                          const RecordSink& sink) {
    if (strategies.empty()) throw std::invalid_argument("no strategy given");
    using Runner =
        std::function<StrategyResult(const FieldSpec&, const SearchOptions&, const RecordSink&)>;
    auto resolve = [&](const std::string& name) -> Runner {
        if (genus == 4 && name == "scan") return genus4_scan;
        if (genus == 5 && name == "exhaustive") return genus5_exhaustive;
        if (genus == 5 && name == "match") return genus5_match;
        if (genus == 6 && name == "fixed-frame")
            return [](const FieldSpec& k, const SearchOptions& o, const RecordSink& s) {
                return genus6_fixed_frame(k, FrameMode::FULL, o, s);
            };
        if (genus == 6 && name == "subfield")
            return [](const FieldSpec& k, const SearchOptions& o, const RecordSink& s) {
                return genus6_fixed_frame(k, FrameMode::SUBFIELD, o, s);
            };
        if (genus == 6 && name == "stream") return genus6_stream_match;
        if (genus == 6 && name == "order3") return genus6_order3;
        if (genus == 7 && name == "chain") return genus7_chain;
        if (genus == 7 && name == "lambda") return genus7_lambda;
        throw std::invalid_argument("unknown strategy '" + name + "' for genus " +
                                    std::to_string(genus));
    };
    if (genus < 4 || genus > 7)
        throw std::invalid_argument("genus must be between 4 and 7");
    std::vector<Runner> runners;
    for (const std::string& name : strategies) runners.push_back(resolve(name));

    SearchOptions cur = opts;
    if (cur.defect_limit < 0) cur.defect_limit = default_budget(field, genus);
    StrategyResult agg;
    agg.complete = true;
    for (const Runner& run : runners) {
        StrategyResult r = run(field, cur, sink);
        agg.emitted += r.emitted;
        agg.complete = agg.complete && r.complete;
        if (r.best_defect >= 0 && (agg.best_defect < 0 || r.best_defect < agg.best_defect))
            agg.best_defect = r.best_defect;
        // later strategies share the threshold: they only emit improvements
        if (!cur.emit_all && agg.best_defect >= 0)
            cur.defect_limit = std::min(cur.defect_limit, agg.best_defect - 1);
    }
    return agg;
}

} // namespace medgenus
