#include "pdc/polymap.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "pdc/errors.hpp"

namespace pdc {

namespace {
void enumerate_exponents(int m, int d, std::vector<int>& cur, int pos, int left,
                         const std::function<void(const std::vector<int>&)>& fn) {
    if (pos == m) {
        fn(cur);
        return;
    }
    for (int e = 0; e <= left; ++e) {
        cur[pos] = e;
        enumerate_exponents(m, d, cur, pos + 1, left - e, fn);
    }
    cur[pos] = 0;
}
}  // namespace

MultiPoly MultiPoly::random(FieldPtr f, int m, int d, RandomStream& rng) {
    MultiPoly p(f, m);
    std::vector<int> cur(m, 0);
    enumerate_exponents(m, d, cur, 0, d, [&](const std::vector<int>& e) {
        p.add_term(e, static_cast<Elem>(rng.below(f->size())));
    });
    return p;
}

void MultiPoly::add_term(std::vector<int> exps, Elem coeff) {
    if (static_cast<int>(exps.size()) != m_) throw UsageError("monomial arity mismatch");
    if (coeff == 0) return;
    terms_.push_back({std::move(exps), coeff});
}

Elem MultiPoly::eval(const Point& x) const {
    Elem s = 0;
    for (const auto& t : terms_) {
        Elem v = t.coeff;
        for (int j = 0; j < m_ && v; ++j)
            if (t.exps[j]) v = f_->mul(v, f_->pow(x[j], t.exps[j]));
        s ^= v;
    }
    return s;
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (const auto& t : terms_) {
        int s = 0;
        for (int e : t.exps) s += e;
        d = std::max(d, s);
    }
    return d;
}

std::uint64_t point_count(const Field& f, int m, std::uint64_t cap) {
    std::uint64_t n = 1;
    for (int j = 0; j < m; ++j) {
        n *= f.size();
        if (n > cap) throw ResourceError("F^m too large to materialize");
    }
    return n;
}

TruthTable::TruthTable(FieldPtr f, int m, std::optional<int> degree_bound, std::vector<Elem> values)
    : f_(std::move(f)), m_(m), deg_(degree_bound), values_(std::move(values)) {
    if (values_.size() != point_count(*f_, m_)) throw UsageError("truth table has wrong length");
    for (auto v : values_)
        if (v >= f_->size()) throw UsageError("truth table value out of range");
}

TruthTable TruthTable::tabulate(FieldPtr f, int m, std::optional<int> degree_bound, const PointOracle& p) {
    const std::uint64_t n = point_count(*f, m);
    std::vector<Elem> values(n);
    for (std::uint64_t i = 0; i < n; ++i) values[i] = p(lex_point(*f, m, i));
    return TruthTable(std::move(f), m, degree_bound, std::move(values));
}

Elem TruthTable::eval(const Point& x) const {
    if (static_cast<int>(x.size()) != m_) throw UsageError("point arity mismatch");
    return values_[lex_index(*f_, x)];
}

PointOracle TruthTable::oracle() const {
    return [this](const Point& x) { return eval(x); };
}

void TruthTable::save(std::ostream& os) const {
    os << f_->size() << ' ' << m_ << ' ' << (deg_ ? *deg_ : -1) << '\n';
    os << std::hex;
    for (auto v : values_) os << v << '\n';
    os << std::dec;
}

TruthTable TruthTable::load(std::istream& is) {
    std::uint64_t p;
    int m, deg;
    if (!(is >> p >> m >> deg)) throw UsageError("truth table: bad header");
    if (p < 2 || (p & (p - 1)) || m < 1) throw UsageError("truth table: bad header values");
    const int k = __builtin_ctzll(p);
    FieldPtr f = Field::make(k);
    const std::uint64_t n = point_count(*f, m);
    std::vector<Elem> values;
    values.reserve(n);
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &used, 16);
        } catch (const std::exception&) {
            throw UsageError("truth table: bad hex value");
        }
        if (used != tok.size()) throw UsageError("truth table: bad hex value");
        values.push_back(static_cast<Elem>(v));
    }
    if (values.size() != n) throw UsageError("truth table: wrong number of values");
    return TruthTable(f, m, deg < 0 ? std::nullopt : std::optional<int>(deg), std::move(values));
}

Curve Curve::random(const Field* f, int m, int degree, RandomStream& rng) {
    std::vector<UniPoly> c;
    for (int j = 0; j < m; ++j) {
        std::vector<Elem> coeffs(degree + 1);
        for (auto& x : coeffs) x = static_cast<Elem>(rng.below(f->size()));
        c.emplace_back(f, std::move(coeffs));
    }
    return Curve(std::move(c));
}

int Curve::degree() const {
    int d = -1;
    for (const auto& c : c_) d = std::max(d, c.degree());
    return d;
}

Point Curve::eval(Elem t) const {
    Point x(c_.size());
    eval_into(t, x.data());
    return x;
}

void Curve::eval_into(Elem t, Elem* out) const {
    for (std::size_t j = 0; j < c_.size(); ++j) out[j] = c_[j].eval(t);
}

}  // namespace pdc
