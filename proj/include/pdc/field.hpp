#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pdc {

// Field elements are stored as their integer value: bit t is the coefficient of x^t.
using Elem = std::uint32_t;

// True iff the GF(2) polynomial (bit t = coefficient of x^t) is irreducible.
// Trial division; intended for degree <= 32.
bool gf2_irreducible(std::uint64_t poly);

bool is_nice_degree(int k);           // k = 2 * 3^l
std::uint32_t builtin_modulus(int k); // 1 <= k <= 24

class Field {
public:
    // Nice modulus x^k + x^(k/2) + 1 for k = 2*3^l, table entry otherwise.
    static std::shared_ptr<const Field> make(int k);
    static std::shared_ptr<const Field> with_modulus(int k, std::uint32_t modulus);

    int k() const { return k_; }
    std::uint32_t modulus() const { return modulus_; }
    bool nice() const { return nice_; }
    std::uint32_t size() const { return size_; }

    Elem add(Elem a, Elem b) const { return a ^ b; }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) return exp_[log_[a] + log_[b]];
        return slow_mul(a, b);
    }
    Elem inv(Elem a) const;  // throws DomainError on 0
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    // Little-endian encoding: character i is the coefficient of x^i.
    std::string to_bits(Elem a) const;
    Elem from_bits(const std::string& s) const;

    bool same(const Field& o) const { return k_ == o.k_ && modulus_ == o.modulus_; }

private:
    Field(int k, std::uint32_t modulus);
    Elem slow_mul(Elem a, Elem b) const;

    int k_;
    std::uint32_t modulus_;
    bool nice_;
    std::uint32_t size_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Value type with its field attached; arithmetic across different fields is a
// usage error.
class FieldElem {
public:
    FieldElem(FieldPtr f, Elem v);
    static FieldElem from_bits(FieldPtr f, const std::string& bits);

    const FieldPtr& field() const { return f_; }
    Elem value() const { return v_; }
    std::string bits() const { return f_->to_bits(v_); }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    FieldElem inverse() const;
    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.f_->same(*b.f_) && a.v_ == b.v_;
    }

private:
    FieldPtr f_;
    Elem v_;
};

FieldElem fe_add(const FieldElem& a, const FieldElem& b);
FieldElem fe_mul(const FieldElem& a, const FieldElem& b);
FieldElem fe_inv(const FieldElem& a);

}  // namespace pdc
