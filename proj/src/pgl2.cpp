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

#include "medgenus/pgl2.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace medgenus {

namespace {
constexpr uint64_t kExhaustiveCutoff = 512;
}

PGL2Element::PGL2Element(const FieldSpec& field, uint64_t a, uint64_t b, uint64_t c, uint64_t d)
    : field_(&field), a_(a), b_(b), c_(c), d_(d) {
    uint64_t det = field.sub(field.mul(a_, d_), field.mul(b_, c_));
    if (det == 0) throw std::invalid_argument("singular matrix is not in PGL2");
    uint64_t first = a_ ? a_ : b_ ? b_ : c_ ? c_ : d_;
    if (first != 1) {
        uint64_t s = field.inv(first);
        a_ = field.mul(a_, s);
        b_ = field.mul(b_, s);
        c_ = field.mul(c_, s);
        d_ = field.mul(d_, s);
    }
}

PGL2Element PGL2Element::operator*(const PGL2Element& o) const {
    const FieldSpec& k = *field_;
    return {k, k.add(k.mul(a_, o.a_), k.mul(b_, o.c_)), k.add(k.mul(a_, o.b_), k.mul(b_, o.d_)),
            k.add(k.mul(c_, o.a_), k.mul(d_, o.c_)), k.add(k.mul(c_, o.b_), k.mul(d_, o.d_))};
}

PGL2Element PGL2Element::inverse() const {
    const FieldSpec& k = *field_;
    return {k, d_, k.neg(b_), k.neg(c_), a_};
}

ProjPoint PGL2Element::apply(const ProjPoint& p) const {
    const FieldSpec& k = *field_;
    uint64_t num = k.add(k.mul(a_, p.num), k.mul(b_, p.den));
    uint64_t den = k.add(k.mul(c_, p.num), k.mul(d_, p.den));
    if (den == 0) return ProjPoint::infinity();
    return ProjPoint::affine(k.div(num, den));
}

Poly moebius_act(const PGL2Element& alpha, const Poly& f, unsigned w) {
    if (f.degree() > static_cast<int>(w)) throw std::invalid_argument("moebius_act: deg f > w");
    const FieldSpec& k = alpha.field();
    Poly num(k, {alpha.b(), alpha.a()}); // a x + b
    Poly den(k, {alpha.d(), alpha.c()}); // c x + d
    // powers of num and den up to w
    std::vector<Poly> np(w + 1), dp(w + 1);
    np[0] = dp[0] = Poly(k, {1});
    for (unsigned i = 1; i <= w; ++i) {
        np[i] = np[i - 1] * num;
        dp[i] = dp[i - 1] * den;
    }
    Poly out(k);
    for (int i = 0; i <= f.degree(); ++i)
        if (f.coeff(i) != 0) out = out + (np[i] * dp[w - i]).scaled(f.coeff(i));
    return out;
}

uint64_t pgl2_order(const PGL2Element& alpha) {
    uint64_t ord = 1;
    PGL2Element acc = alpha;
    const uint64_t q = alpha.field().q();
    const uint64_t bound = q * q + q; // group exponent is far below this
    while (!acc.is_identity()) {
        acc = acc * alpha;
        ++ord;
        if (ord > bound) throw std::logic_error("pgl2_order did not terminate");
    }
    return ord;
}

bool pgl2_order3_identity(const PGL2Element& alpha) {
    if (alpha.is_identity()) return false;
    const FieldSpec& k = alpha.field();
    uint64_t v = k.add(k.add(k.mul(alpha.a(), alpha.a()), k.mul(alpha.a(), alpha.d())),
                       k.add(k.mul(alpha.d(), alpha.d()), k.mul(alpha.b(), alpha.c())));
    return v == 0;
}

void for_each_pgl2(const FieldSpec& field, const std::function<void(const PGL2Element&)>& fn) {
    const uint64_t q = field.q();
    // canonical representatives: a = 1, or (a, b) = (0, 1)
    for (uint64_t b = 0; b < q; ++b)
        for (uint64_t c = 0; c < q; ++c)
            for (uint64_t d = 0; d < q; ++d) {
                if (field.sub(d, field.mul(b, c)) == 0) continue;
                fn(PGL2Element(field, 1, b, c, d));
            }
    for (uint64_t c = 1; c < q; ++c)
        for (uint64_t d = 0; d < q; ++d) fn(PGL2Element(field, 0, 1, c, d));
}

PGL2Element mobius_through(const FieldSpec& k, const ProjPoint& p0, const ProjPoint& p1,
                           const ProjPoint& p2) {
    // M(0:1) = p0, M(1:1) = p1, M(1:0) = p2
    uint64_t lam = k.sub(k.mul(p1.num, p0.den), k.mul(p1.den, p0.num));
    uint64_t mu = k.sub(k.mul(p1.den, p2.num), k.mul(p1.num, p2.den));
    return {k, k.mul(lam, p2.num), k.mul(mu, p0.num), k.mul(lam, p2.den), k.mul(mu, p0.den)};
}

namespace {

// scalar with A = scalar * B, or 0 when not proportional (0 is never a valid
// scalar for nonzero polys)
uint64_t proportional_scalar(const Poly& A, const Poly& B) {
    if (A.is_zero() || B.is_zero()) return 0;
    if (A.degree() != B.degree()) return 0;
    const FieldSpec& k = A.field();
    uint64_t s = k.div(A.lc(), B.lc());
    for (int i = 0; i < A.degree(); ++i)
        if (A.coeff(i) != k.mul(s, B.coeff(i))) return 0;
    return s;
}

// factor-degree multiset of f viewed with weight w (infinity contributes
// w - deg f extra degree-1 slots)
std::vector<int> projective_pattern(const Poly& f, unsigned w) {
    auto pat = factorization_degrees(f);
    for (int i = f.degree(); i < static_cast<int>(w); ++i) pat.push_back(1);
    std::sort(pat.begin(), pat.end());
    return pat;
}

std::vector<ProjPoint> rational_points(const Poly& f, unsigned w) {
    std::vector<ProjPoint> pts;
    for (uint64_t r : roots(f)) pts.push_back(ProjPoint::affine(r));
    if (f.degree() < static_cast<int>(w)) pts.push_back(ProjPoint::infinity());
    std::sort(pts.begin(), pts.end());
    return pts;
}

void try_candidate(const PGL2Element& alpha, const Poly& f_src, const Poly& f_dst, unsigned w,
                   std::vector<Transformation>& out) {
    uint64_t s = proportional_scalar(moebius_act(alpha, f_src, w), f_dst);
    if (s != 0) out.push_back({alpha, s});
}

std::vector<Transformation> match_by_rational_triples(const Poly& f_src, const Poly& f_dst,
                                                      unsigned w,
                                                      const std::vector<ProjPoint>& src_pts,
                                                      const std::vector<ProjPoint>& dst_pts) {
    const FieldSpec& k = f_src.field();
    std::vector<Transformation> out;
    PGL2Element mq = mobius_through(k, dst_pts[0], dst_pts[1], dst_pts[2]);
    PGL2Element mq_inv = mq.inverse();
    const size_t m = src_pts.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            for (size_t l = 0; l < m; ++l) {
                if (i == j || i == l || j == l) continue;
                PGL2Element mr = mobius_through(k, src_pts[i], src_pts[j], src_pts[l]);
                try_candidate(mr * mq_inv, f_src, f_dst, w, out);
            }
    return out;
}

} // namespace

namespace detail {

std::vector<Transformation> matching_via_splitting_field(const Poly& f_src, const Poly& f_dst,
                                                         unsigned w) {
    const FieldSpec& k = f_src.field();
    auto degs = factorization_degrees(f_src);
    unsigned ell = 1;
    for (int d : degs) ell = std::lcm(ell, static_cast<unsigned>(d));
    const SubfieldEmbedding& emb = SubfieldEmbedding::get(k, ell);
    const FieldSpec& K = emb.big();
    Poly Fs = emb.lift(f_src), Fd = emb.lift(f_dst);
    auto all_points = [&](const Poly& F) {
        std::vector<ProjPoint> pts;
        for (uint64_t r : roots(F)) pts.push_back(ProjPoint::affine(r));
        if (F.degree() < static_cast<int>(w)) pts.push_back(ProjPoint::infinity());
        std::sort(pts.begin(), pts.end());
        return pts;
    };
    auto src_pts = all_points(Fs);
    auto dst_pts = all_points(Fd);
    std::vector<Transformation> out;
    if (src_pts.size() != dst_pts.size() || dst_pts.size() < 3) return out;

    PGL2Element mq_inv = mobius_through(K, dst_pts[0], dst_pts[1], dst_pts[2]).inverse();
    const size_t mcount = src_pts.size();
    for (size_t i = 0; i < mcount; ++i)
        for (size_t j = 0; j < mcount; ++j)
            for (size_t l = 0; l < mcount; ++l) {
                if (i == j || i == l || j == l) continue;
                PGL2Element cand =
                    mobius_through(K, src_pts[i], src_pts[j], src_pts[l]) * mq_inv;
                auto ia = emb.unembed(cand.a());
                auto ib = emb.unembed(cand.b());
                auto ic = emb.unembed(cand.c());
                auto id = emb.unembed(cand.d());
                if (!ia || !ib || !ic || !id) continue;
                PGL2Element alpha(k, *ia, *ib, *ic, *id);
                uint64_t s = proportional_scalar(moebius_act(alpha, f_src, w), f_dst);
                if (s != 0) {
                    Transformation t{alpha, s};
                    bool dup = false;
                    for (const auto& e : out)
                        if (e.alpha == alpha) dup = true;
                    if (!dup) out.push_back(t);
                }
            }
    return out;
}

} // namespace detail

std::vector<Transformation> transformations_matching(const Poly& f_src, const Poly& f_dst,
                                                     unsigned w) {
    if (f_src.degree() > static_cast<int>(w) || f_dst.degree() > static_cast<int>(w))
        throw std::invalid_argument("transformations_matching: degree exceeds weight");
    if (!is_separable(f_src) || !is_separable(f_dst))
        throw std::invalid_argument("transformations_matching: inseparable input");
    const FieldSpec& k = f_src.field();
    std::vector<Transformation> out;
    if (projective_pattern(f_src, w) != projective_pattern(f_dst, w)) return out;

    auto src_pts = rational_points(f_src, w);
    auto dst_pts = rational_points(f_dst, w);
    if (dst_pts.size() >= 3)
        return match_by_rational_triples(f_src, f_dst, w, src_pts, dst_pts);

    if (k.q() <= kExhaustiveCutoff) {
        for_each_pgl2(k, [&](const PGL2Element& alpha) {
            try_candidate(alpha, f_src, f_dst, w, out);
        });
        return out;
    }
    return detail::matching_via_splitting_field(f_src, f_dst, w);
}

} // namespace medgenus
