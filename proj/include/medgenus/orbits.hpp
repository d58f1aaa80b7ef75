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

#include "medgenus/elliptic.hpp"
#include "medgenus/pgl2.hpp"

namespace medgenus {

/// One orbit of the separable cubics/quartics under squares-then-PGL2,
/// named by the pair (E, [P0]) that generates it.
struct OrbitRep {
    EllipticCurve E;
    TwoDivisionClass cls;
    Poly f; // pair_to_quartic(E, cls.representative)
};

/// The quartic x^4 - 2a x^2 - 8c x + a^2 - 4b built from the model of E
/// translated so that P0 = (0, c), g = x^3 + a x^2 + b x + c^2; for P0 at
/// infinity, the cubic g itself.
Poly pair_to_quartic(const EllipticCurve& E, const ECPoint& P0);

/// Inverse direction: the canonical pair whose quartic is orbit-equal to f
/// (E drawn from all_curves, class from two_division_classes).
std::pair<EllipticCurve, TwoDivisionClass> quartic_to_pair(const Poly& f);

/// True when f and h generate the same orbit: some alpha in PGL2 carries f to
/// a *square* multiple of h (weight-4 action).
bool same_orbit(const Poly& f, const Poly& h);

/// Streams one OrbitRep per orbit, ordered by (j encoding of E, model of E,
/// class index).  The emitted set hits every orbit exactly once.
void enumerate_orbit_reps(const FieldSpec& field,
                          const std::function<void(const OrbitRep&)>& fn);

} // namespace medgenus
