#include "pdc/poly.hpp"

#include <algorithm>

#include "pdc/errors.hpp"

namespace pdc {

UniPoly::UniPoly(const Field* f, std::vector<Elem> coeffs) : f_(f), c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Field* f, Elem c, std::size_t deg) {
    std::vector<Elem> v(deg + 1, 0);
    v[deg] = c;
    return UniPoly(f, std::move(v));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::interpolate(const Field* f, std::span<const Elem> xs, std::span<const Elem> ys) {
    const std::size_t n = xs.size();
    if (ys.size() != n) throw UsageError("interpolate: size mismatch");
    // Newton divided differences.
    std::vector<Elem> dd(ys.begin(), ys.end());
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            const Elem den = xs[i] ^ xs[i - j];
            if (den == 0) throw UsageError("interpolate: repeated abscissa");
            dd[i] = f->div(dd[i] ^ dd[i - 1], den);
        }
    std::vector<Elem> c(n, 0);
    // Horner on the Newton form: p = dd[n-1]; p = p*(X - x_i) + dd[i].
    std::vector<Elem> acc;
    for (std::size_t i = n; i-- > 0;) {
        std::vector<Elem> next(acc.size() + 1, 0);
        for (std::size_t t = 0; t < acc.size(); ++t) {
            next[t + 1] ^= acc[t];
            next[t] ^= f->mul(acc[t], xs[i]);
        }
        next[0] ^= dd[i];
        acc = std::move(next);
    }
    return UniPoly(f, std::move(acc));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] ^= c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] ^= o.c_[i];
    return UniPoly(f_ ? f_ : o.f_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly(f_ ? f_ : o.f_, {});
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] ^= f_->mul(c_[i], o.c_[j]);
    }
    return UniPoly(f_, std::move(r));
}

UniPoly UniPoly::scaled(Elem s) const {
    std::vector<Elem> r(c_);
    for (auto& x : r) x = f_->mul(x, s);
    return UniPoly(f_, std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Elem> r(c_);
    const int dd = d.degree();
    if (degree() < dd) return {UniPoly(f_, {}), *this};
    std::vector<Elem> q(degree() - dd + 1, 0);
    const Elem lead_inv = d.f_->inv(d.c_.back());
    for (int i = degree(); i >= dd; --i) {
        if (r[i] == 0) continue;
        const Elem t = f_->mul(r[i], lead_inv);
        q[i - dd] = t;
        for (int j = 0; j <= dd; ++j) r[i - dd + j] ^= f_->mul(t, d.c_[j]);
    }
    return {UniPoly(f_, std::move(q)), UniPoly(f_, std::move(r))};
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(f_->inv(c_.back()));
}

bool operator<(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

UniPoly poly_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UniPoly poly_powmod(UniPoly base, std::uint64_t e, const UniPoly& mod) {
    UniPoly r = UniPoly::constant(mod.field(), 1) % mod;
    base = base % mod;
    while (e) {
        if (e & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return r;
}

namespace {
// X^(p^j) mod q via j applications of the Frobenius-power map.
UniPoly x_pow_p_pow(const UniPoly& q, int j) {
    const Field* f = q.field();
    UniPoly x = UniPoly::monomial(f, 1, 1) % q;
    for (int t = 0; t < j; ++t) x = poly_powmod(x, f->size(), q);
    return x;
}
}  // namespace

bool poly_irreducible(const UniPoly& q) {
    const int n = q.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const Field* f = q.field();
    const UniPoly x = UniPoly::monomial(f, 1, 1);
    if (!(x_pow_p_pow(q, n) == x % q)) return false;
    int rem = n;
    for (int r = 2; r <= rem; ++r) {
        if (rem % r) continue;
        while (rem % r == 0) rem /= r;
        const UniPoly g = poly_gcd(q, x_pow_p_pow(q, n / r) + x);
        if (g.degree() != 0) return false;
    }
    return true;
}

}  // namespace pdc
