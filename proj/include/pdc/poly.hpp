#pragma once

#include <span>
#include <vector>

#include "pdc/field.hpp"

namespace pdc {

// Univariate polynomial over a binary field, coefficients low degree first,
// kept trimmed (no trailing zeros).
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(const Field* f, std::vector<Elem> coeffs);
    static UniPoly constant(const Field* f, Elem c) { return UniPoly(f, {c}); }
    static UniPoly monomial(const Field* f, Elem c, std::size_t deg);

    // Unique polynomial of degree < n through n points with distinct xs.
    static UniPoly interpolate(const Field* f, std::span<const Elem> xs, std::span<const Elem> ys);

    const Field* field() const { return f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<Elem>& coeffs() const { return c_; }

    Elem eval(Elem x) const {
        Elem r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = f_->mul(r, x) ^ c_[i];
        return r;
    }

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(Elem s) const;
    // Quotient and remainder; throws DomainError on division by zero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
    UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }
    UniPoly monic() const;

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator<(const UniPoly& a, const UniPoly& b);

private:
    void trim();
    const Field* f_ = nullptr;
    std::vector<Elem> c_;
};

UniPoly poly_gcd(UniPoly a, UniPoly b);
UniPoly poly_powmod(UniPoly base, std::uint64_t e, const UniPoly& mod);

// Rabin's test for a monic polynomial over F_p of degree >= 1.
bool poly_irreducible(const UniPoly& q);

}  // namespace pdc
