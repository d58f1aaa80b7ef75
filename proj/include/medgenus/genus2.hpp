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
#include <optional>
#include <tuple>
#include <vector>

#include "medgenus/counting.hpp"
#include "medgenus/elliptic.hpp"

namespace medgenus {

/// y^2 = f with f a separable quintic or sextic; count and defect are computed
/// once at construction and cached.
struct Genus2Curve {
    HyperellipticModel model;
    int64_t count = 0;
    int64_t defect = 0;

    const FieldSpec& field() const { return model.field(); }
};

Genus2Curve make_genus2(const Poly& f); // validates degree and separability

/// A factorization f = G1 G2 G3 into rational factors of degree <= 2 (one
/// factor linear for quintic models).  The constant multiplier sits inside G1.
struct QuadraticSplitting {
    Poly G1, G2, G3;
};

/// The bielliptic curve C: y^2 = x^6 + a x^4 + b x^2 + c together with its two
/// elliptic quotients E1: y^2 = u^3 + a u^2 + b u + c (u = x^2) and E2 given by
/// its monic model y^2 = v^3 + b v^2 + ac v + c^2 (v = c/x^2, same count as the
/// raw quotient y^2 = c u^3 + b u^2 + a u + 1).  Requires c != 0; empty when
/// the sextic is inseparable.  The identity
///     count(C) = count(E1) + count(E2) - (q + 1)
/// is checked on every construction and a violation throws.
std::optional<std::tuple<Genus2Curve, EllipticCurve, EllipticCurve>>
bielliptic_curve(const FieldElement& a, const FieldElement& b, const FieldElement& c);

/// One Richelot isogeny step along the splitting S of C's model: with
/// G_i = g2 x^2 + g1 x + g0, let delta = det[(g2, g1, g0)_i] (row (0, g1, g0)
/// for a linear factor); empty when delta = 0 (split Jacobian), otherwise the
/// codomain curve y^2 = -delta H1 H2 H3, H_i = G_j' G_k - G_j G_k' for (i,j,k)
/// cyclic.  count(C') = count(C) is checked and a violation throws; invalid
/// splittings are rejected with invalid_argument.
std::optional<Genus2Curve> richelot_step(const Genus2Curve& C, const QuadraticSplitting& S);

/// All unordered triples {G1, G2, G3} of rational factors of the model with
/// degrees <= 2 summing to deg f, built by pairing rational roots and keeping
/// irreducible quadratic factors whole.  Patterns admitting no such triple
/// give the empty list.
std::vector<QuadraticSplitting> all_splittings(const Genus2Curve& C);

enum class StreamBackend {
    EXHAUSTIVE, // every normalized quintic/sextic model; complete, for q <= 64
    FACTORY,    // bielliptic generator + Richelot walk; scales, not complete
};

struct StreamOptions {
    int walk_depth = 3;          // FACTORY: Richelot closure depth
    size_t bucket_cap = 10000;   // FACTORY: curves kept per defect value
};

/// Streams pairwise non-isomorphic genus-2 curves with defect <= d_max in
/// nondecreasing defect order (ties broken by model encoding).  Emitted models
/// are the canonical representatives from genus2_canonical, so the stream is
/// deterministic given (field, d_max, backend, options).
void small_defect_stream(const FieldSpec& field, int64_t d_max, StreamBackend backend,
                         const std::function<void(const Genus2Curve&)>& fn,
                         const StreamOptions& opts = {});

/// Canonical model of the curve y^2 = f under PGL2 changes of coordinate and
/// square rescalings of f: the minimal weight-6 image by (degree, coefficient
/// code) order.  Quintic and sextic models of one curve canonicalize equally.
Poly genus2_canonical(const Poly& f);

/// True when y^2 = f and y^2 = g are isomorphic as double covers of P^1, i.e.
/// some alpha in PGL2 carries f to a square multiple of g (weight-6 action).
bool genus2_isomorphic(const Poly& f, const Poly& g);

} // namespace medgenus
