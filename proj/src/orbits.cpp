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

#include "medgenus/orbits.hpp"

#include <stdexcept>

namespace medgenus {

Poly pair_to_quartic(const EllipticCurve& E, const ECPoint& P0) {
    if (!ec_on_curve(E, P0)) throw std::invalid_argument("P0 is not on E");
    const FieldSpec& k = E.field();
    if (P0.inf) return E.g;
    // translate so the marked point sits at (0, c)
    Poly g = E.g.shifted(P0.x);
    uint64_t a = g.coeff(2), b = g.coeff(1), c = P0.y; // g(0) = c^2
    uint64_t four = k.from_int(4).code;
    return Poly(k, {k.sub(k.mul(a, a), k.mul(four, b)),
                    k.neg(k.mul(k.from_int(8).code, c)),
                    k.neg(k.add(a, a)), 0, 1});
}

bool same_orbit(const Poly& f, const Poly& h) {
    for (const auto& t : transformations_matching(f, h, 4))
        if (f.field().chi(t.scalar) == 1) return true;
    return false;
}

std::pair<EllipticCurve, TwoDivisionClass> quartic_to_pair(const Poly& f) {
    if (!is_separable(f) || (f.degree() != 3 && f.degree() != 4))
        throw std::invalid_argument("quartic_to_pair needs a separable cubic or quartic");
    const FieldSpec& k = f.field();
    // the lemma guarantees exactly one generating pair; scan the transversal
    uint64_t j = j_of_quartic(f);
    for (const auto& E : all_curves(k)) {
        if (ec_j(E) != j) continue;
        for (const auto& cls : two_division_classes(E))
            if (same_orbit(pair_to_quartic(E, cls.representative), f)) return {E, cls};
    }
    throw std::logic_error("no generating pair found; orbit enumeration is broken");
}

void enumerate_orbit_reps(const FieldSpec& field,
                          const std::function<void(const OrbitRep&)>& fn) {
    for (const auto& E : all_curves(field))
        for (const auto& cls : two_division_classes(E))
            fn({E, cls, pair_to_quartic(E, cls.representative)});
}

} // namespace medgenus
