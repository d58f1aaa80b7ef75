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

#include "medgenus/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace medgenus {

namespace {

bool is_prime_u64(uint64_t v) {
    if (v < 2) return false;
    for (uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

// --- minimal polynomial arithmetic over F_p, used only to pick and check the
// --- modulus before a FieldSpec exists.  Coefficients constant-first.
using PPoly = std::vector<uint64_t>;

void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& m, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce mod m (m monic)
    while (r.size() >= m.size()) {
        uint64_t c = r.back();
        size_t shift = r.size() - m.size();
        if (c != 0)
            for (size_t i = 0; i < m.size(); ++i)
                r[shift + i] = (r[shift + i] + (p - c % p) * m[i]) % p;
        r.pop_back();
        ptrim(r);
        if (r.size() < m.size()) break;
    }
    ptrim(r);
    return r;
}

PPoly ppowmod_xq(const PPoly& m, uint64_t p, uint64_t e) {
    // x^e mod m
    PPoly result{1};
    PPoly base{0, 1};
    while (e > 0) {
        if (e & 1) result = pmulmod(result, base, m, p);
        base = pmulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

PPoly pgcd(PPoly a, PPoly b, uint64_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // a mod b
        uint64_t lcinv = 1;
        { // inverse of lc(b) mod p
            uint64_t l = b.back() % p;
            uint64_t e = p - 2, acc = 1, base = l;
            while (e) {
                if (e & 1) acc = acc * base % p;
                base = base * base % p;
                e >>= 1;
            }
            lcinv = acc;
        }
        while (a.size() >= b.size()) {
            uint64_t c = a.back() * lcinv % p;
            size_t shift = a.size() - b.size();
            if (c != 0)
                for (size_t i = 0; i < b.size(); ++i)
                    a[shift + i] = (a[shift + i] + (p - c) * b[i] % p) % p;
            a.pop_back();
            ptrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool irreducible_mod_p(const PPoly& m, uint64_t p) {
    // m monic of degree n; standard test via x^{p^d} fixed points.
    size_t n = m.size() - 1;
    if (n == 0) return false;
    // x^{p^n} == x mod m
    PPoly xp = ppowmod_xq(m, p, p); // x^p mod m
    PPoly acc = xp;
    for (size_t d = 1; d < n; ++d) {
        // gcd(x^{p^d} - x, m) must be constant for d < n
        PPoly diff = acc;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        ptrim(diff);
        PPoly g = pgcd(diff, m, p);
        if (g.size() > 1) return false;
        // acc = acc^p mod m, i.e. substitute: compose acc with x^p.
        // compute acc(x)^p mod m by repeated multiplication (p is small here).
        PPoly next{1};
        PPoly base = acc;
        uint64_t e = p;
        while (e) {
            if (e & 1) next = pmulmod(next, base, m, p);
            base = pmulmod(base, base, m, p);
            e >>= 1;
        }
        acc = next;
    }
    PPoly diff = acc;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    ptrim(diff);
    return diff.empty();
}

PPoly default_modulus(uint64_t p, unsigned n) {
    // smallest monic irreducible of degree n by integer encoding of
    // (c0, ..., c_{n-1})
    uint64_t limit = 1;
    for (unsigned i = 0; i < n; ++i) limit *= p;
    for (uint64_t code = 0; code < limit; ++code) {
        PPoly m(n + 1, 0);
        uint64_t c = code;
        for (unsigned i = 0; i < n; ++i) {
            m[i] = c % p;
            c /= p;
        }
        m[n] = 1;
        if (irreducible_mod_p(m, p)) return m;
    }
    throw std::logic_error("no irreducible modulus found"); // unreachable
}

std::mutex& intern_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<std::pair<uint64_t, unsigned>, std::vector<uint64_t>>,
         std::unique_ptr<FieldSpec>>&
intern_pool() {
    static std::map<std::pair<std::pair<uint64_t, unsigned>, std::vector<uint64_t>>,
                    std::unique_ptr<FieldSpec>>
        pool;
    return pool;
}

} // namespace

uint64_t isqrt_u64(uint64_t v) {
    if (v == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r > v / r) --r;
    while ((r + 1) <= v / (r + 1)) ++r;
    return r;
}

const FieldSpec& FieldSpec::get(uint64_t p, unsigned n, const std::vector<uint64_t>& modulus) {
    if (!is_prime_u64(p) || p < 3) throw std::invalid_argument("p must be an odd prime");
    if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::vector<uint64_t> m = modulus;
    for (auto& c : m) c %= p;
    if (m.empty()) m = (n == 1) ? std::vector<uint64_t>{0, 1} : default_modulus(p, n);
    if (n == 1) {
        if (m != std::vector<uint64_t>{0, 1})
            throw std::invalid_argument("prime field takes the identity placeholder t");
    } else {
        if (m.size() != n + 1 || m.back() != 1)
            throw std::invalid_argument("modulus must be monic of degree n");
        if (!irreducible_mod_p(m, p)) throw std::invalid_argument("modulus is not irreducible");
    }
    std::lock_guard<std::mutex> lock(intern_mutex());
    auto key = std::make_pair(std::make_pair(p, n), m);
    auto& pool = intern_pool();
    auto it = pool.find(key);
    if (it == pool.end())
        it = pool.emplace(key, std::unique_ptr<FieldSpec>(new FieldSpec(p, n, m))).first;
    return *it->second;
}

const FieldSpec& FieldSpec::parse(const std::string& spec) {
    std::string s = spec;
    std::vector<uint64_t> modulus;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::stringstream ms(s.substr(slash + 1));
        std::string tok;
        while (std::getline(ms, tok, ',')) modulus.push_back(std::stoull(tok));
        s = s.substr(0, slash);
    }
    uint64_t p;
    unsigned n = 1;
    auto caret = s.find('^');
    if (caret != std::string::npos) {
        p = std::stoull(s.substr(0, caret));
        n = static_cast<unsigned>(std::stoul(s.substr(caret + 1)));
    } else {
        p = std::stoull(s);
    }
    return get(p, n, modulus);
}

FieldSpec::FieldSpec(uint64_t p, unsigned n, std::vector<uint64_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
    q_ = 1;
    for (unsigned i = 0; i < n_; ++i) q_ *= p_;
    ppow_.resize(n_ + 1);
    ppow_[0] = 1;
    for (unsigned i = 1; i <= n_; ++i) ppow_[i] = ppow_[i - 1] * p_;
    if (n_ > 1) {
        // redrows_[i] = t^{n+i} mod m, for reducing products of degree < 2n-1
        redrows_.resize(n_ - 1);
        std::vector<uint64_t> cur(modulus_.begin(), modulus_.end() - 1); // -m mod t^n... start: t^n = -lower(m)
        for (auto& c : cur) c = (p_ - c) % p_;
        redrows_[0] = cur;
        for (unsigned i = 1; i + 1 < n_; ++i) {
            // multiply cur by t, reduce
            std::vector<uint64_t> next(n_, 0);
            for (unsigned j = 0; j + 1 < n_; ++j) next[j + 1] = cur[j];
            uint64_t top = cur[n_ - 1];
            if (top != 0)
                for (unsigned j = 0; j < n_; ++j)
                    next[j] = (next[j] + top * redrows_[0][j]) % p_;
            redrows_[i] = next;
            cur = next;
        }
    }
}

std::string FieldSpec::to_string() const {
    std::ostringstream os;
    os << p_;
    if (n_ > 1) {
        os << '^' << n_ << '/';
        for (size_t i = 0; i < modulus_.size(); ++i) {
            if (i) os << ',';
            os << modulus_[i];
        }
    }
    return os.str();
}

std::vector<uint64_t> FieldSpec::decode(uint64_t code) const {
    std::vector<uint64_t> c(n_);
    for (unsigned i = 0; i < n_; ++i) {
        c[i] = code % p_;
        code /= p_;
    }
    return c;
}

uint64_t FieldSpec::encode(const std::vector<uint64_t>& coeffs) const {
    uint64_t code = 0;
    for (unsigned i = 0; i < n_ && i < coeffs.size(); ++i) code += (coeffs[i] % p_) * ppow_[i];
    return code;
}

FieldElement FieldSpec::from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return {static_cast<uint64_t>(r), this};
}

uint64_t FieldSpec::add_ext(uint64_t a, uint64_t b) const {
    uint64_t r = 0;
    for (unsigned i = 0; i < n_; ++i) {
        uint64_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * ppow_[i];
        a /= p_;
        b /= p_;
    }
    return r;
}

uint64_t FieldSpec::add(uint64_t a, uint64_t b) const {
    if (n_ == 1) {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_ext(a, b);
}

uint64_t FieldSpec::neg(uint64_t a) const {
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    uint64_t r = 0;
    for (unsigned i = 0; i < n_; ++i) {
        uint64_t c = a % p_;
        r += (c == 0 ? 0 : p_ - c) * ppow_[i];
        a /= p_;
    }
    return r;
}

uint64_t FieldSpec::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t FieldSpec::mul_ext(uint64_t a, uint64_t b) const {
    uint64_t ac[8], bc[8], rc[16] = {0};
    for (unsigned i = 0; i < n_; ++i) {
        ac[i] = a % p_;
        a /= p_;
        bc[i] = b % p_;
        b /= p_;
    }
    for (unsigned i = 0; i < n_; ++i) {
        if (ac[i] == 0) continue;
        for (unsigned j = 0; j < n_; ++j) rc[i + j] += ac[i] * bc[j];
    }
    for (unsigned k = 0; k < 2 * n_ - 1; ++k) rc[k] %= p_;
    // fold degrees n..2n-2 using redrows_
    for (unsigned k = n_; k <= 2 * n_ - 2; ++k) {
        uint64_t c = rc[k];
        if (c == 0) continue;
        const auto& row = redrows_[k - n_];
        for (unsigned j = 0; j < n_; ++j) rc[j] = (rc[j] + c * row[j]) % p_;
    }
    uint64_t r = 0;
    for (unsigned i = 0; i < n_; ++i) r += rc[i] * ppow_[i];
    return r;
}

uint64_t FieldSpec::mul(uint64_t a, uint64_t b) const {
    if (n_ == 1) return a * b % p_;
    if (!mul_table_.empty()) return mul_table_[a * q_ + b];
    return mul_ext(a, b);
}

uint64_t FieldSpec::pow(uint64_t a, uint64_t e) const {
    uint64_t acc = 1, base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

uint64_t FieldSpec::inv(uint64_t a) const {
    if (a == 0) throw std::domain_error("division by zero in F_q");
    return pow(a, q_ - 2);
}

int FieldSpec::chi(uint64_t a) const {
    if (a == 0) return 0;
    if (!chi_table_.empty()) return chi_table_[a];
    uint64_t e = pow(a, (q_ - 1) / 2);
    return e == 1 ? 1 : -1;
}

uint64_t FieldSpec::nonsquare() const {
    if (nonsquare_ != 0) return nonsquare_;
    for (uint64_t c = 2; c < q_; ++c) {
        if (chi(c) == -1) {
            nonsquare_ = c;
            return c;
        }
    }
    throw std::logic_error("no nonsquare in F_q"); // impossible for q > 1 odd
}

std::optional<uint64_t> FieldSpec::sqrt(uint64_t a) const {
    if (a == 0) return 0;
    if (!sqrt_table_.empty()) {
        uint32_t r = sqrt_table_[a];
        if (r == UINT32_MAX) return std::nullopt;
        return r;
    }
    if (chi(a) == -1) return std::nullopt;
    // Tonelli-Shanks in the cyclic group F_q^*
    uint64_t t = q_ - 1;
    unsigned s = 0;
    while ((t & 1) == 0) {
        t >>= 1;
        ++s;
    }
    uint64_t z = pow(nonsquare(), t);
    uint64_t m = s;
    uint64_t c = z;
    uint64_t u = pow(a, t);
    uint64_t r = pow(a, (t + 1) / 2);
    while (u != 1) {
        uint64_t u2 = u;
        uint64_t i = 0;
        while (u2 != 1) {
            u2 = mul(u2, u2);
            ++i;
        }
        uint64_t b = c;
        for (uint64_t k = 0; k + i + 1 < m; ++k) b = mul(b, b);
        m = i;
        c = mul(b, b);
        u = mul(u, c);
        r = mul(r, b);
    }
    uint64_t other = neg(r);
    return std::min(r, other);
}

void FieldSpec::enable_tables() const {
    std::call_once(tables_once_, [this] {
        chi_table_.assign(q_, 0);
        sqrt_table_.assign(q_, UINT32_MAX);
        sqrt_table_[0] = 0;
        for (uint64_t a = 1; a < q_; ++a) {
            uint64_t sq = mul(a, a);
            chi_table_[sq] = 1;
            uint64_t cur = sqrt_table_[sq];
            if (cur == UINT32_MAX || a < cur) sqrt_table_[sq] = static_cast<uint32_t>(a);
        }
        for (uint64_t a = 1; a < q_; ++a)
            if (chi_table_[a] == 0) chi_table_[a] = -1;
        if (n_ > 1 && q_ <= kTableLimit) {
            mul_table_.resize(q_ * q_);
            add_table_.resize(q_ * q_);
            for (uint64_t a = 0; a < q_; ++a)
                for (uint64_t b = 0; b <= a; ++b) {
                    uint16_t m = static_cast<uint16_t>(mul_ext(a, b));
                    uint16_t s = static_cast<uint16_t>(add_ext(a, b));
                    mul_table_[a * q_ + b] = mul_table_[b * q_ + a] = m;
                    add_table_[a * q_ + b] = add_table_[b * q_ + a] = s;
                }
        }
        tables_built_ = true;
    });
}

std::vector<uint64_t> FieldSpec::subfield_codes(unsigned m) const {
    if (m == 0 || n_ % m != 0) throw std::invalid_argument("subfield degree must divide n");
    uint64_t pm = 1;
    for (unsigned i = 0; i < m; ++i) pm *= p_;
    std::vector<uint64_t> out;
    for (uint64_t a = 0; a < q_; ++a)
        if (pow(a, pm) == a) out.push_back(a);
    return out;
}

int quadratic_character(const FieldElement& e) { return e.field->chi(e.code); }

std::optional<FieldElement> field_sqrt(const FieldElement& e) {
    auto r = e.field->sqrt(e.code);
    if (!r) return std::nullopt;
    return FieldElement{*r, e.field};
}

} // namespace medgenus
