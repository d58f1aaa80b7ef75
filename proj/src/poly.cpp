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

#include "medgenus/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace medgenus {

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly::Poly(const FieldSpec& field, std::vector<uint64_t> coeff_codes)
    : field_(&field), c_(std::move(coeff_codes)) {
    trim();
}

Poly Poly::from_ints(const FieldSpec& field, const std::vector<long long>& coeffs) {
    std::vector<uint64_t> c;
    c.reserve(coeffs.size());
    for (long long v : coeffs) c.push_back(field.from_int(v).code);
    return Poly(field, std::move(c));
}

Poly Poly::monomial(const FieldSpec& field, unsigned k, uint64_t lc_code) {
    std::vector<uint64_t> c(k + 1, 0);
    c[k] = lc_code;
    return Poly(field, std::move(c));
}

uint64_t Poly::eval(uint64_t x) const {
    uint64_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), c_[i]);
    return acc;
}

uint64_t Poly::eval_hom(uint64_t num, uint64_t den, unsigned w) const {
    // sum c_i num^i den^(w-i); requires degree <= w
    uint64_t acc = 0;
    uint64_t np = 1;
    std::vector<uint64_t> dp(w + 1);
    dp[0] = 1;
    for (unsigned i = 1; i <= w; ++i) dp[i] = field_->mul(dp[i - 1], den);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) acc = field_->add(acc, field_->mul(c_[i], field_->mul(np, dp[w - i])));
        np = field_->mul(np, num);
    }
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_->add(coeff(i), o.coeff(i));
    return Poly(*field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_->sub(coeff(i), o.coeff(i));
    return Poly(*field_, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<uint64_t> r(c_);
    for (auto& v : r) v = field_->neg(v);
    return Poly(*field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(*field_);
    std::vector<uint64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0) r[i + j] = field_->add(r[i + j], field_->mul(c_[i], o.c_[j]));
    }
    return Poly(*field_, std::move(r));
}

Poly Poly::scaled(uint64_t c) const {
    std::vector<uint64_t> r(c_);
    for (auto& v : r) v = field_->mul(v, c);
    return Poly(*field_, std::move(r));
}

bool Poly::operator<(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(*field_);
    std::vector<uint64_t> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<long long>(i)).code);
    return Poly(*field_, std::move(r));
}

Poly Poly::monic() const {
    if (is_zero()) throw std::domain_error("monic() of zero polynomial");
    if (lc() == 1) return *this;
    return scaled(field_->inv(lc()));
}

Poly Poly::composed_linear(uint64_t u, uint64_t a) const {
    // Horner on f(u x + a)
    Poly acc(*field_);
    Poly lin = Poly(*field_, {a, u});
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * lin;
        acc = acc + Poly(*field_, {c_[i]});
    }
    return acc;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (degree() < d.degree()) return {Poly(*field_), *this};
    std::vector<uint64_t> rem = c_;
    std::vector<uint64_t> quo(degree() - d.degree() + 1, 0);
    uint64_t lcinv = field_->inv(d.lc());
    for (size_t k = rem.size(); k-- >= d.c_.size();) {
        if (k + 1 > rem.size()) continue;
        uint64_t c = field_->mul(rem[k], lcinv);
        if (c != 0) {
            size_t shift = k - (d.c_.size() - 1);
            quo[shift] = c;
            for (size_t i = 0; i < d.c_.size(); ++i)
                rem[shift + i] = field_->sub(rem[shift + i], field_->mul(c, d.c_[i]));
        }
        if (k == d.c_.size() - 1) break;
    }
    rem.resize(d.c_.size() - 1);
    return {Poly(*field_, std::move(quo)), Poly(*field_, std::move(rem))};
}

std::string Poly::wire() const {
    std::ostringstream os;
    if (c_.empty()) return "0";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i];
    }
    return os.str();
}

Poly Poly::parse_wire(const FieldSpec& field, const std::string& s) {
    std::vector<uint64_t> c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        // allow small negative integers for convenience
        long long v = std::stoll(tok);
        if (v < 0)
            c.push_back(field.from_int(v).code);
        else {
            if (static_cast<uint64_t>(v) >= field.q())
                throw std::invalid_argument("coefficient code out of range");
            c.push_back(static_cast<uint64_t>(v));
        }
    }
    return Poly(field, std::move(c));
}

std::string Poly::pretty() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i >= 1) {
            if (c_[i] != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.monic();
}

uint64_t resultant(const Poly& f, const Poly& g) {
    const FieldSpec& k = f.field();
    Poly a = f, b = g;
    uint64_t res = 1;
    while (true) {
        if (b.is_zero()) return a.degree() > 0 ? 0 : (a.is_zero() ? 0 : res);
        if (b.degree() == 0) {
            // res *= lc(b)^deg(a)
            return k.mul(res, k.pow(b.lc(), a.degree() < 0 ? 0 : a.degree()));
        }
        Poly r = a % b;
        int da = a.degree(), db = b.degree(), dr = r.degree();
        // res(a,b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
        uint64_t sign = (static_cast<uint64_t>(da) * db) % 2 == 1 ? k.neg(1) : 1;
        res = k.mul(res, k.mul(sign, k.pow(b.lc(), da - (dr < 0 ? 0 : dr))));
        if (dr < 0) {
            // r = 0: resultant is zero unless b is constant (handled above)
            return 0;
        }
        a = b;
        b = r;
    }
}

FieldElement discriminant(const Poly& f) {
    if (f.degree() < 2) throw std::invalid_argument("discriminant requires deg >= 2");
    const FieldSpec& k = f.field();
    uint64_t r = resultant(f, f.derivative());
    int d = f.degree();
    uint64_t sign = ((static_cast<uint64_t>(d) * (d - 1) / 2) % 2 == 1) ? k.neg(1) : 1;
    return k.element(k.mul(sign, k.mul(r, k.inv(f.lc()))));
}

bool is_separable(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("separability of zero polynomial");
    if (f.degree() == 0) return true;
    Poly d = f.derivative();
    if (d.is_zero()) return false;
    return gcd(f, d).degree() == 0;
}

namespace {

// g(x) = h(x^p) for monic g; returns h.  Coefficient p-th roots are a_i^(q/p).
Poly pth_root(const Poly& g) {
    const FieldSpec& k = g.field();
    std::vector<uint64_t> c(g.degree() / k.p() + 1, 0);
    uint64_t e = k.q() / k.p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = k.pow(g.coeff(i * k.p()), e);
    return Poly(k, std::move(c));
}

// Product of the distinct monic irreducible factors of monic g.
Poly radical(const Poly& g) {
    const FieldSpec& k = g.field();
    if (g.degree() <= 0) return Poly(k, {1});
    Poly d = g.derivative();
    if (d.is_zero()) return radical(pth_root(g)); // g lies in F_q[x^p]
    Poly h = gcd(g, d);
    if (h.degree() == 0) return g;
    // the standard char-p squarefree walk: peel one copy of each factor whose
    // multiplicity is prime to p, then recurse into the pure p-power part
    Poly w = (g / h).monic();
    Poly res(k, {1});
    while (w.degree() > 0) {
        Poly y = gcd(w, h);
        res = res * (w / y).monic();
        w = y.monic();
        h = (h / y).monic();
    }
    if (h.degree() > 0) res = res * radical(pth_root(h));
    return res.monic();
}

} // namespace

Poly squarefree_part(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree part of zero polynomial");
    // keep each irreducible factor iff its multiplicity is odd: y^2 = u^2 v and
    // y^2 = v cut out the same quadratic extension of the function field
    Poly g = f.monic();
    Poly out(f.field(), {1});
    for (const Poly& p : factor_separable(radical(g)).factors) {
        unsigned mult = 0;
        Poly rest = g;
        while ((rest % p).is_zero()) {
            rest = rest / p;
            ++mult;
        }
        if (mult & 1) out = out * p;
    }
    // the square class of the leading coefficient is part of the extension
    // data (y^2 = nu v is the twist of y^2 = v, not the same curve); keep its
    // canonical representative
    const FieldSpec& k = f.field();
    if (k.chi(f.lc()) != 1) out = out.scaled(k.nonsquare());
    return out;
}

Poly powmod(const Poly& base, unsigned __int128 exp, const Poly& m) {
    Poly result = Poly(base.field(), {1});
    Poly b = base % m;
    while (exp > 0) {
        if (exp & 1) result = (result * b) % m;
        b = (b * b) % m;
        exp >>= 1;
    }
    return result;
}

namespace {

// Equal-degree splitting (Cantor-Zassenhaus, odd q) with a deterministic probe
// sequence so factor order is reproducible.
void edf(const Poly& f, int d, std::vector<Poly>& out) {
    const FieldSpec& k = f.field();
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    unsigned __int128 qd = 1;
    for (int i = 0; i < d; ++i) qd *= k.q();
    unsigned __int128 e = (qd - 1) / 2;
    // deterministic probes: every monic u of degree 1 .. 2d-1, in order.  For
    // any two distinct factors some u in this range separates their chi labels
    // (choose u by CRT), so the sweep always terminates.
    for (int du = 1; du <= 2 * d - 1; ++du) {
        uint64_t total = 1;
        for (int i = 0; i < du; ++i) total *= k.q();
        for (uint64_t idx = 0; idx < total; ++idx) {
            std::vector<uint64_t> c(du + 1, 0);
            uint64_t v = idx;
            for (int i = 0; i < du; ++i) {
                c[i] = v % k.q();
                v /= k.q();
            }
            c[du] = 1;
            Poly u(k, std::move(c));
            Poly w = powmod(u, e, f);
            Poly g = gcd(w - Poly(k, {1}), f);
            if (g.degree() > 0 && g.degree() < f.degree()) {
                edf(g, d, out);
                edf((f / g).monic(), d, out);
                return;
            }
        }
    }
    throw std::logic_error("equal-degree split failed; input was not a distinct product");
}

} // namespace

Factorization factor_separable(const Poly& f) {
    if (f.is_zero() || f.degree() < 0) throw std::invalid_argument("factor of zero polynomial");
    const FieldSpec& k = f.field();
    Factorization out;
    out.lc = f.lc();
    if (f.degree() == 0) return out;
    if (!is_separable(f)) throw std::invalid_argument("factor_separable needs separable input");
    Poly rest = f.monic();
    // distinct-degree factorization
    Poly h = Poly(k, {0, 1}); // x
    Poly x = h;
    for (int d = 1; rest.degree() > 0 && d <= rest.degree(); ++d) {
        if (2 * d > rest.degree()) {
            out.factors.push_back(rest);
            break;
        }
        h = powmod(h, k.q(), rest);
        Poly g = gcd(h - x, rest);
        if (g.degree() > 0) {
            edf(g, d, out.factors);
            rest = (rest / g).monic();
            h = h % rest;
        }
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

std::vector<int> factorization_degrees(const Poly& f) {
    if (f.is_zero() || f.degree() < 1)
        throw std::invalid_argument("factorization_degrees requires deg >= 1");
    if (!is_separable(f)) throw std::invalid_argument("factorization_degrees: inseparable input");
    auto fac = factor_separable(f);
    std::vector<int> out;
    out.reserve(fac.factors.size());
    for (const auto& g : fac.factors) out.push_back(g.degree());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<uint64_t> roots(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("roots of zero polynomial");
    const FieldSpec& k = f.field();
    std::vector<uint64_t> out;
    if (f.degree() < 1) return out;
    // isolate the linear part with gcd(x^q - x, f) on the radical, so that
    // repeated roots are still reported (once)
    Poly sf = radical(f.monic());
    Poly xq = powmod(Poly(k, {0, 1}), k.q(), sf);
    Poly lin = gcd(xq - Poly(k, {0, 1}), sf);
    if (lin.degree() <= 0) return out;
    std::vector<Poly> linf;
    if (lin.degree() == 1)
        linf.push_back(lin);
    else
        edf(lin, 1, linf);
    for (const auto& g : linf) out.push_back(k.neg(g.coeff(0)));
    std::sort(out.begin(), out.end());
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    if (!is_separable(f)) return false; // over F_q an irreducible is separable
    auto fac = factor_separable(f);
    return fac.factors.size() == 1;
}

SubfieldEmbedding::SubfieldEmbedding(const FieldSpec& base, unsigned ell)
    : base_(&base), big_(&FieldSpec::get(base.p(), base.n() * ell)) {
    const FieldSpec& K = *big_;
    // base modulus coefficients lie in F_p, which both fields encode identically
    std::vector<uint64_t> mc(base.modulus().begin(), base.modulus().end());
    auto mroots = roots(Poly(K, std::move(mc)));
    if (mroots.empty()) throw std::logic_error("base modulus has no root in the extension");
    tau_ = mroots.front();
    unembed_.reserve(base.q());
    for (uint64_t a = 0; a < base.q(); ++a) unembed_.emplace_back(embed(a), a);
    std::sort(unembed_.begin(), unembed_.end());
}

const SubfieldEmbedding& SubfieldEmbedding::get(const FieldSpec& base, unsigned ell) {
    static std::map<std::pair<const FieldSpec*, unsigned>, SubfieldEmbedding> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(&base, ell);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, SubfieldEmbedding(base, ell)).first;
    return it->second;
}

uint64_t SubfieldEmbedding::embed(uint64_t code) const {
    const FieldSpec& K = *big_;
    uint64_t acc = 0, tp = 1;
    for (uint64_t c : base_->decode(code)) {
        acc = K.add(acc, K.mul(c, tp));
        tp = K.mul(tp, tau_);
    }
    return acc;
}

std::optional<uint64_t> SubfieldEmbedding::unembed(uint64_t code) const {
    auto it = std::lower_bound(unembed_.begin(), unembed_.end(),
                               std::make_pair(code, uint64_t{0}));
    if (it == unembed_.end() || it->first != code) return std::nullopt;
    return it->second;
}

Poly SubfieldEmbedding::lift(const Poly& f) const {
    std::vector<uint64_t> c;
    for (int i = 0; i <= f.degree(); ++i) c.push_back(embed(f.coeff(i)));
    return Poly(*big_, std::move(c));
}

} // namespace medgenus
