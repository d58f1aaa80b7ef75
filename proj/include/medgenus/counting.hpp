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

#include <stdexcept>
#include <vector>

#include "medgenus/poly.hpp"

namespace medgenus {

/// q + 1 + g * floor(2 sqrt q), computed with integer square roots only.
int64_t weil_serre(uint64_t q, unsigned g);

/// The smooth projective model of y^2 = f, f separable.
struct HyperellipticModel {
    Poly f;

    const FieldSpec& field() const { return f.field(); }
    unsigned genus() const { return static_cast<unsigned>((f.degree() - 1) / 2); }
};

/// Number of points of the smooth model: affine sum of 1 + chi(f(x)), plus
/// 1 point at infinity for odd degree, 2 for even degree with square leading
/// coefficient, 0 for even degree with nonsquare leading coefficient.
int64_t count_points(const HyperellipticModel& C);

/// weil_serre(q, genus) - count_points; nonnegative whenever counting is
/// correct (asserted).
int64_t defect(const HyperellipticModel& C);

/// Bulk point counts for a batch of models over one field.  The parallel
/// version fans the batch out across OpenMP workers; results are identical to
/// the serial reference by construction (independent pure counts).
std::vector<int64_t> count_points_many(const FieldSpec& field, const std::vector<Poly>& fs);
std::vector<int64_t> count_points_many_serial(const FieldSpec& field, const std::vector<Poly>& fs);

/// The curve obtained by adjoining sqrt(f_1), ..., sqrt(f_m) to k(x),
/// m in {2, 3}.
struct CoverSpec {
    std::vector<Poly> polys;

    const FieldSpec& field() const { return polys.front().field(); }
};

/// Raised when a subset product reduces to a constant mod squares.
struct DegenerateSubcoverError : std::invalid_argument {
    unsigned subset_mask;
    explicit DegenerateSubcoverError(unsigned mask)
        : std::invalid_argument("degenerate subcover, subset mask " + std::to_string(mask)),
          subset_mask(mask) {}
};

/// The 2^m - 1 quadratic subcovers y^2 = squarefree_part(prod_{i in T} f_i),
/// ordered by subset bitmask (bit i = poly i).
std::vector<HyperellipticModel> subcovers(const CoverSpec& D);

unsigned cover_genus(const CoverSpec& D);

/// #D(F_q) via trace additivity over the quadratic subcovers:
/// sum of subcover counts minus (2^m - 2)(q + 1).
int64_t cover_count(const CoverSpec& D);

/// Sum of subcover defects; asserted equal to
/// weil_serre(q, cover_genus) - cover_count.
int64_t cover_defect(const CoverSpec& D);

namespace detail {
/// Independent check: sums fiber sizes point by point over P^1(F_q).
/// Test oracle for cover_count.
int64_t cover_count_fiberwise(const CoverSpec& D);
}

} // namespace medgenus
