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

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace medgenus {

class FieldSpec;

/// An element of F_q, stored by its canonical integer encoding
/// sum a_i p^i over the power basis of t (little-endian).
struct FieldElement {
    uint64_t code = 0;
    const FieldSpec* field = nullptr;

    FieldElement() = default;
    FieldElement(uint64_t c, const FieldSpec* f) : code(c), field(f) {}

    bool is_zero() const { return code == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(uint64_t e) const;

    bool operator==(const FieldElement& o) const { return code == o.code && field == o.field; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
};

/// The finite field F_q = F_p[t]/(m(t)), p odd.  Instances are interned and
/// immutable; FieldElement and Poly hold plain pointers into the intern pool.
///
/// Elements are addressed by code in [0, q).  All arithmetic is exposed at the
/// code level so hot loops stay allocation-free; FieldElement wraps the same
/// calls for convenience.
class FieldSpec {
public:
    /// Interned lookup.  Empty modulus means the default one: the monic
    /// irreducible of degree n over F_p with the smallest integer encoding.
    static const FieldSpec& get(uint64_t p, unsigned n = 1,
                                const std::vector<uint64_t>& modulus = {});

    /// Parses "p", "p^n", or "p^n/c0,c1,...,cn" (modulus constant-first).
    static const FieldSpec& parse(const std::string& spec);

    uint64_t p() const { return p_; }
    unsigned n() const { return n_; }
    uint64_t q() const { return q_; }
    const std::vector<uint64_t>& modulus() const { return modulus_; }

    /// Self-describing spec string; always carries the modulus when n > 1.
    std::string to_string() const;

    // --- arithmetic on codes -------------------------------------------------
    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;  // throws on 0
    uint64_t div(uint64_t a, uint64_t b) const { return mul(a, inv(b)); }
    uint64_t pow(uint64_t a, uint64_t e) const;

    /// Quadratic character: 0 for 0, +1 for nonzero squares, -1 otherwise.
    /// Uses the dense table when built, Euler's criterion otherwise.
    int chi(uint64_t a) const;

    /// Square root with the deterministic choice of the root whose encoding is
    /// smaller; nullopt when chi(a) = -1.
    std::optional<uint64_t> sqrt(uint64_t a) const;

    /// Smallest-encoding nonsquare (the canonical twisting constant).
    uint64_t nonsquare() const;

    /// x -> x^p.
    uint64_t frobenius(uint64_t a) const { return pow(a, p_); }

    /// Builds the dense chi/sqrt tables (and, for small extension fields, the
    /// add/mul tables).  Idempotent and thread-safe; called by the search
    /// drivers before their point-count loops.
    void enable_tables() const;
    bool tables_built() const { return tables_built_; }

    // --- element helpers -----------------------------------------------------
    FieldElement element(uint64_t code) const { return {code, this}; }
    FieldElement zero() const { return {0, this}; }
    FieldElement one() const { return {1, this}; }
    /// Embeds an integer through the prime subfield (reduces mod p).
    FieldElement from_int(long long v) const;

    std::vector<uint64_t> decode(uint64_t code) const;          // n residues mod p
    uint64_t encode(const std::vector<uint64_t>& coeffs) const; // inverse of decode

    /// Codes of the subfield F_{p^m} inside this field (m must divide n).
    std::vector<uint64_t> subfield_codes(unsigned m) const;

    FieldSpec(const FieldSpec&) = delete;
    FieldSpec& operator=(const FieldSpec&) = delete;

private:
    FieldSpec(uint64_t p, unsigned n, std::vector<uint64_t> modulus);

    uint64_t mul_ext(uint64_t a, uint64_t b) const;
    uint64_t add_ext(uint64_t a, uint64_t b) const;

    uint64_t p_ = 0;
    unsigned n_ = 1;
    uint64_t q_ = 0;
    std::vector<uint64_t> modulus_;              // length n+1, monic, constant-first
    std::vector<std::vector<uint64_t>> redrows_; // t^{n+i} mod m, i = 0..n-2
    std::vector<uint64_t> ppow_;                 // p^0..p^n

    // dense tables, built once and then read-only
    mutable std::once_flag tables_once_;
    mutable bool tables_built_ = false;
    mutable std::vector<int8_t> chi_table_;
    mutable std::vector<uint32_t> sqrt_table_;   // UINT32_MAX = no root
    mutable std::vector<uint16_t> mul_table_;    // extension fields, q <= kTableLimit
    mutable std::vector<uint16_t> add_table_;
    mutable uint64_t nonsquare_ = 0;             // lazily cached, 0 = unknown

    static constexpr uint64_t kTableLimit = 4096;
};

/// chi as a free function on elements (0, +1, -1).
int quadratic_character(const FieldElement& e);

/// Deterministic square root (smaller encoding of the two), empty if nonsquare.
std::optional<FieldElement> field_sqrt(const FieldElement& e);

/// Integer square root (floor), exact for all uint64 inputs.
uint64_t isqrt_u64(uint64_t v);

inline FieldElement FieldElement::operator+(const FieldElement& o) const {
    return {field->add(code, o.code), field};
}
inline FieldElement FieldElement::operator-(const FieldElement& o) const {
    return {field->sub(code, o.code), field};
}
inline FieldElement FieldElement::operator*(const FieldElement& o) const {
    return {field->mul(code, o.code), field};
}
inline FieldElement FieldElement::operator/(const FieldElement& o) const {
    return {field->div(code, o.code), field};
}
inline FieldElement FieldElement::operator-() const { return {field->neg(code), field}; }
inline FieldElement FieldElement::inv() const { return {field->inv(code), field}; }
inline FieldElement FieldElement::pow(uint64_t e) const { return {field->pow(code, e), field}; }

} // namespace medgenus
