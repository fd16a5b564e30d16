#include "pdc/field.hpp"

#include <map>
#include <mutex>

#include "pdc/errors.hpp"

namespace pdc {

namespace {

int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t b) {
    const int db = degree(b);
    for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
    return a;
}

constexpr std::uint32_t kTable[25] = {
    0,        0x3,      0x7,      0xb,      0x13,     0x25,     0x49,
    0x83,     0x11b,    0x203,    0x409,    0x805,    0x1009,   0x201b,
    0x4021,   0x8003,   0x1002b,  0x20009,  0x40201,  0x80027,  0x100009,
    0x200005, 0x400003, 0x800021, 0x100001b};

constexpr int kTableLimit = 20;

}  // namespace

bool gf2_irreducible(std::uint64_t poly) {
    const int d = degree(poly);
    if (d < 1) return false;
    for (std::uint64_t q = 2; degree(q) <= d / 2; ++q)
        if (gf2_mod(poly, q) == 0) return false;
    return true;
}

bool is_nice_degree(int k) {
    if (k < 2 || k % 2) return false;
    int r = k / 2;
    while (r % 3 == 0) r /= 3;
    return r == 1;
}

std::uint32_t builtin_modulus(int k) {
    if (k < 1 || k > 24) throw UsageError("field degree must be in [1, 24]");
    if (is_nice_degree(k)) return (1u << k) | (1u << (k / 2)) | 1u;
    return kTable[k];
}

FieldPtr Field::make(int k) {
    static std::mutex mu;
    static std::map<int, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    FieldPtr f(new Field(k, builtin_modulus(k)));
    cache.emplace(k, f);
    return f;
}

FieldPtr Field::with_modulus(int k, std::uint32_t modulus) {
    if (k < 1 || k > 24 || degree(modulus) != k) throw UsageError("modulus degree mismatch");
    if (!gf2_irreducible(modulus)) throw UsageError("modulus is reducible");
    return FieldPtr(new Field(k, modulus));
}

Field::Field(int k, std::uint32_t modulus)
    : k_(k), modulus_(modulus), nice_(is_nice_degree(k) && modulus == builtin_modulus(k)),
      size_(1u << k) {
    if (k_ > kTableLimit) return;
    // Find a primitive element by trial and build log/exp tables over it.
    const std::uint32_t order = size_ - 1;
    for (Elem g = (order == 1 ? 1 : 2); g < size_; ++g) {
        std::vector<Elem> exp(2 * static_cast<std::size_t>(order) + 1);
        std::vector<std::uint32_t> log(size_, 0);
        Elem x = 1;
        bool ok = true;
        for (std::uint32_t i = 0; i < order; ++i) {
            if (i > 0 && x == 1) { ok = false; break; }
            exp[i] = x;
            log[x] = i;
            x = slow_mul(x, g);
        }
        if (!ok || x != 1) continue;
        for (std::uint32_t i = order; i < exp.size(); ++i) exp[i] = exp[i - order];
        exp_ = std::move(exp);
        log_ = std::move(log);
        return;
    }
}

Elem Field::slow_mul(Elem a, Elem b) const {
    std::uint64_t r = 0, x = a;
    while (b) {
        if (b & 1) r ^= x;
        b >>= 1;
        x <<= 1;
        if (x >> k_ & 1) x ^= modulus_;
    }
    return static_cast<Elem>(r);
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw DomainError("inverse of zero");
    if (!log_.empty()) return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
    return pow(a, size_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::string Field::to_bits(Elem a) const {
    std::string s(k_, '0');
    for (int i = 0; i < k_; ++i)
        if (a >> i & 1) s[i] = '1';
    return s;
}

Elem Field::from_bits(const std::string& s) const {
    if (static_cast<int>(s.size()) != k_) throw UsageError("element encoding has wrong length");
    Elem a = 0;
    for (int i = 0; i < k_; ++i) {
        if (s[i] == '1') a |= 1u << i;
        else if (s[i] != '0') throw UsageError("element encoding must be binary");
    }
    return a;
}

FieldElem::FieldElem(FieldPtr f, Elem v) : f_(std::move(f)), v_(v) {
    if (!f_) throw UsageError("null field");
    if (v_ >= f_->size()) throw UsageError("element out of range");
}

FieldElem FieldElem::from_bits(FieldPtr f, const std::string& bits) {
    const Elem v = f->from_bits(bits);
    return FieldElem(std::move(f), v);
}

namespace {
void check_same(const FieldElem& a, const FieldElem& b) {
    if (!a.field()->same(*b.field())) throw UsageError("elements of different fields");
}
}  // namespace

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    check_same(a, b);
    return FieldElem(a.f_, a.v_ ^ b.v_);
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    check_same(a, b);
    return FieldElem(a.f_, a.f_->mul(a.v_, b.v_));
}

FieldElem FieldElem::inverse() const { return FieldElem(f_, f_->inv(v_)); }

FieldElem fe_add(const FieldElem& a, const FieldElem& b) { return a + b; }
FieldElem fe_mul(const FieldElem& a, const FieldElem& b) { return a * b; }
FieldElem fe_inv(const FieldElem& a) { return a.inverse(); }

}  // namespace pdc
