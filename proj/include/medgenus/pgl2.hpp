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

#include <functional>
#include <utility>
#include <vector>

#include "medgenus/poly.hpp"

namespace medgenus {

/// A point of P^1(F_q) in homogeneous coordinates (num : den), normalized so
/// that den = 1, or (1 : 0) for the point at infinity.
struct ProjPoint {
    uint64_t num = 0;
    uint64_t den = 1;

    static ProjPoint infinity() { return {1, 0}; }
    static ProjPoint affine(uint64_t x) { return {x, 1}; }
    bool is_infinity() const { return den == 0; }
    bool operator==(const ProjPoint& o) const { return num == o.num && den == o.den; }
    bool operator<(const ProjPoint& o) const {
        if (den != o.den) return den > o.den; // affine points first, by code
        return num < o.num;
    }
};

/// Element of PGL_2(F_q): matrix [a b; c d] with ad - bc != 0, modulo scalars.
/// The stored representative is canonical: the first nonzero entry in scan
/// order a, b, c, d equals 1.
class PGL2Element {
public:
    PGL2Element(const FieldSpec& field, uint64_t a, uint64_t b, uint64_t c, uint64_t d);

    static PGL2Element identity(const FieldSpec& field) { return {field, 1, 0, 0, 1}; }

    const FieldSpec& field() const { return *field_; }
    uint64_t a() const { return a_; }
    uint64_t b() const { return b_; }
    uint64_t c() const { return c_; }
    uint64_t d() const { return d_; }

    PGL2Element operator*(const PGL2Element& o) const;
    PGL2Element inverse() const;
    bool operator==(const PGL2Element& o) const {
        return field_ == o.field_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }
    bool operator!=(const PGL2Element& o) const { return !(*this == o); }
    bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

    /// Moebius action on P^1: x -> (a x + b)/(c x + d).
    ProjPoint apply(const ProjPoint& p) const;

private:
    const FieldSpec* field_;
    uint64_t a_, b_, c_, d_;
};

/// (cx+d)^w f((ax+b)/(cx+d)) with denominators cleared, computed for the
/// canonical matrix representative.  Requires deg f <= w; the result degree
/// may land anywhere in [0, w] (roots move through infinity).
Poly moebius_act(const PGL2Element& alpha, const Poly& f, unsigned w);

/// Multiplicative order of alpha in PGL_2(F_q).
uint64_t pgl2_order(const PGL2Element& alpha);

/// The trace identity characterizing order 3: alpha != 1 and
/// a^2 + ad + d^2 + bc = 0.
bool pgl2_order3_identity(const PGL2Element& alpha);

/// Enumerates all of PGL_2(F_q) (canonical representatives), in a fixed order.
void for_each_pgl2(const FieldSpec& field, const std::function<void(const PGL2Element&)>& fn);

struct Transformation {
    PGL2Element alpha;
    uint64_t scalar; // moebius_act(alpha, f_src, w) = scalar * f_dst
};

/// All alpha in PGL_2(F_q) with moebius_act(alpha, f_src, w) proportional to
/// f_dst, together with the proportionality scalar.  Complete over the whole
/// group.  Empty when the factorization-degree patterns differ.
std::vector<Transformation> transformations_matching(const Poly& f_src, const Poly& f_dst,
                                                     unsigned w);

/// The Moebius transformation sending (0, 1, infinity) to (p0, p1, p2).
PGL2Element mobius_through(const FieldSpec& field, const ProjPoint& p0, const ProjPoint& p1,
                           const ProjPoint& p2);

namespace detail {
/// Splitting-field route used above the exhaustive-scan cutoff; exposed for
/// cross-checking against the scan at small q.
std::vector<Transformation> matching_via_splitting_field(const Poly& f_src, const Poly& f_dst,
                                                         unsigned w);
}

} // namespace medgenus
