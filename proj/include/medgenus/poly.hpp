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

#include <string>
#include <utility>
#include <vector>

#include "medgenus/field.hpp"

namespace medgenus {

/// Univariate polynomial over F_q.  Coefficients are element codes, constant
/// first, with no trailing zeros; the zero polynomial is the empty sequence
/// (degree -1 sentinel).
class Poly {
public:
    Poly() = default;
    explicit Poly(const FieldSpec& field) : field_(&field) {}
    Poly(const FieldSpec& field, std::vector<uint64_t> coeff_codes);

    /// Builds from small signed integers, embedded through the prime subfield.
    static Poly from_ints(const FieldSpec& field, const std::vector<long long>& coeffs);
    /// x^k
    static Poly monomial(const FieldSpec& field, unsigned k, uint64_t lc_code = 1);

    const FieldSpec& field() const { return *field_; }
    const FieldSpec* field_ptr() const { return field_; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint64_t lc() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<uint64_t>& coeffs() const { return c_; }

    uint64_t eval(uint64_t x) const;
    /// Homogeneous evaluation num^deg-weighted: sum c_i num^i den^(w-i).
    uint64_t eval_hom(uint64_t num, uint64_t den, unsigned w) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(uint64_t c) const; // c * this
    bool operator==(const Poly& o) const { return field_ == o.field_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const; // (degree, coeff codes) order, for dedup sets

    Poly derivative() const;
    Poly monic() const; // throws on zero
    Poly shifted(uint64_t a) const { return composed_linear(1, a); } // f(x + a)
    Poly composed_linear(uint64_t u, uint64_t a) const;              // f(u x + a)

    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    Poly operator/(const Poly& d) const { return divmod(d).first; }

    std::string wire() const; // comma-separated codes, constant first
    static Poly parse_wire(const FieldSpec& field, const std::string& s);
    std::string pretty() const; // human-readable, for diagnostics

private:
    const FieldSpec* field_ = nullptr;
    std::vector<uint64_t> c_;
    void trim();
};

Poly gcd(const Poly& a, const Poly& b);

/// Resultant Res(f, g) by the Euclidean recurrence.
uint64_t resultant(const Poly& f, const Poly& g);

/// (-1)^(d(d-1)/2) Res(f, f') / lc(f), d = deg f.  Requires deg f >= 2.
FieldElement discriminant(const Poly& f);

/// gcd(f, f') is constant.  Requires f nonzero.
bool is_separable(const Poly& f);

/// Reduction of f modulo squares: the product of the irreducible factors of
/// odd multiplicity, scaled by the canonical representative (1 or nu) of the
/// leading coefficient's square class.  y² = u²·v and y² = v define the same
/// quadratic extension, but y² = nu·v is the twist, so the class is kept.
Poly squarefree_part(const Poly& f);

/// Monic irreducible factors of a separable f (sorted canonically), plus lc.
struct Factorization {
    uint64_t lc;
    std::vector<Poly> factors;
};
Factorization factor_separable(const Poly& f);

/// Sorted multiset of irreducible-factor degrees.  Rejects inseparable input.
std::vector<int> factorization_degrees(const Poly& f);

/// Roots in F_q, sorted by code.
std::vector<uint64_t> roots(const Poly& f);

bool is_irreducible(const Poly& f);

/// base^exp mod m, exponents up to 2^127 for the equal-degree split.
Poly powmod(const Poly& base, unsigned __int128 exp, const Poly& m);

/// Embedding of F_q into its degree-ell extension K (default modulus), via the
/// smallest root tau of the base modulus in K.  unembed returns nullopt for
/// elements outside the image.  Instances are cached per (field, ell).
class SubfieldEmbedding {
public:
    static const SubfieldEmbedding& get(const FieldSpec& base, unsigned ell);

    const FieldSpec& big() const { return *big_; }
    uint64_t embed(uint64_t code) const;
    std::optional<uint64_t> unembed(uint64_t code) const;
    Poly lift(const Poly& f) const; // coefficient-wise embed

private:
    SubfieldEmbedding(const FieldSpec& base, unsigned ell);
    const FieldSpec* base_;
    const FieldSpec* big_;
    uint64_t tau_;
    std::vector<std::pair<uint64_t, uint64_t>> unembed_; // sorted (K-code, base-code)
};

} // namespace medgenus
