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

#include "medgenus/counting.hpp"

#include <cassert>
#include <cstdlib>

namespace medgenus {

int64_t weil_serre(uint64_t q, unsigned g) {
    return static_cast<int64_t>(q) + 1 +
           static_cast<int64_t>(g) * static_cast<int64_t>(isqrt_u64(4 * q));
}

namespace {

int infinity_points(const Poly& f) {
    if (f.degree() % 2 == 1) return 1;
    return f.field().chi(f.lc()) == 1 ? 2 : 0;
}

int64_t count_points_impl(const Poly& f) {
    const FieldSpec& k = f.field();
    int64_t n = infinity_points(f);
    for (uint64_t x = 0; x < k.q(); ++x) n += 1 + k.chi(f.eval(x));
    return n;
}

void validate(const HyperellipticModel& C) {
    if (C.f.degree() < 1) throw std::invalid_argument("model needs deg f >= 1");
    if (!is_separable(C.f)) throw std::invalid_argument("model polynomial is inseparable");
}

} // namespace

int64_t count_points(const HyperellipticModel& C) {
    validate(C);
    int64_t n = count_points_impl(C.f);
    // loose Weil sanity bound; a violation means the counting itself is broken
    int64_t q1 = static_cast<int64_t>(C.field().q()) + 1;
    int64_t g = C.genus();
    assert(std::llabs(n - q1) <= g * static_cast<int64_t>(isqrt_u64(4 * C.field().q())) + g);
    return n;
}

int64_t defect(const HyperellipticModel& C) {
    int64_t d = weil_serre(C.field().q(), C.genus()) - count_points(C);
    assert(d >= 0);
    return d;
}

std::vector<int64_t> count_points_many_serial(const FieldSpec& field,
                                              const std::vector<Poly>& fs) {
    std::vector<int64_t> out(fs.size());
    for (size_t i = 0; i < fs.size(); ++i) out[i] = count_points_impl(fs[i]);
    (void)field;
    return out;
}

std::vector<int64_t> count_points_many(const FieldSpec& field, const std::vector<Poly>& fs) {
    field.enable_tables(); // build chi table before the workers share it
    std::vector<int64_t> out(fs.size());
    const int64_t n = static_cast<int64_t>(fs.size());
#ifdef MEDGENUS_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (int64_t i = 0; i < n; ++i) out[i] = count_points_impl(fs[i]);
    return out;
}

std::vector<HyperellipticModel> subcovers(const CoverSpec& D) {
    const size_t m = D.polys.size();
    if (m != 2 && m != 3) throw std::invalid_argument("cover needs 2 or 3 polynomials");
    std::vector<HyperellipticModel> out;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        Poly prod = Poly(D.field(), {1});
        for (size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) prod = prod * D.polys[i];
        Poly sf = squarefree_part(prod);
        if (sf.degree() < 1) throw DegenerateSubcoverError(mask);
        out.push_back({sf});
    }
    return out;
}

unsigned cover_genus(const CoverSpec& D) {
    unsigned g = 0;
    for (const auto& C : subcovers(D)) g += C.genus();
    return g;
}

int64_t cover_count(const CoverSpec& D) {
    auto subs = subcovers(D);
    int64_t n = 0;
    for (const auto& C : subs) n += count_points(C);
    int64_t q1 = static_cast<int64_t>(D.field().q()) + 1;
    return n - static_cast<int64_t>(subs.size() - 1) * q1;
}

int64_t cover_defect(const CoverSpec& D) {
    auto subs = subcovers(D);
    int64_t d = 0;
    unsigned g = 0;
    for (const auto& C : subs) {
        d += defect(C);
        g += C.genus();
    }
    int64_t alt = weil_serre(D.field().q(), g) - cover_count(D);
    assert(d == alt);
    (void)alt;
    return d;
}

namespace detail {

int64_t cover_count_fiberwise(const CoverSpec& D) {
    const FieldSpec& k = D.field();
    auto subs = subcovers(D);
    const int64_t overlap = static_cast<int64_t>(subs.size() - 1);
    int64_t total = 0;
    for (uint64_t x = 0; x <= k.q(); ++x) { // q encodes the point at infinity
        int64_t fiber = -overlap;
        for (const auto& C : subs) {
            if (x < k.q())
                fiber += 1 + k.chi(C.f.eval(x));
            else
                fiber += infinity_points(C.f);
        }
        total += fiber;
    }
    return total;
}

} // namespace detail

} // namespace medgenus
