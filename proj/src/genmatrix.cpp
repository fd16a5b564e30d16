#include "pdc/genmatrix.hpp"

#include "pdc/errors.hpp"

namespace pdc {

namespace {

UniPoly choose_modulus(const FieldPtr& base, int m) {
    const Field* f = base.get();
    if (m == 1) return UniPoly(f, {2 % f->size(), 1});
    auto binomial = [&](Elem c) {
        std::vector<Elem> v(m + 1, 0);
        v[0] = c;
        v[m] = 1;
        return UniPoly(f, v);
    };
    if (f->size() > 2) {
        UniPoly q = binomial(2);
        if (poly_irreducible(q)) return q;
    }
    for (Elem c = 1; c < f->size(); ++c) {
        UniPoly q = binomial(c);
        if (poly_irreducible(q)) return q;
    }
    // Lexicographic search over the lower coefficients.
    std::vector<Elem> v(m + 1, 0);
    v[m] = 1;
    for (;;) {
        int i = 0;
        while (i < m && ++v[i] == f->size()) v[i++] = 0;
        if (i == m) break;
        UniPoly q(f, v);
        if (poly_irreducible(q)) return q;
    }
    throw ConstructionError("no irreducible modulus found");
}

}  // namespace

ExtField::ExtField(FieldPtr base, int m) : base_(std::move(base)), m_(m) {
    if (m_ < 1) throw UsageError("extension degree must be positive");
    if (static_cast<long>(base_->k()) * m_ > 62) throw UsageError("extension too large");
    q_ = choose_modulus(base_, m_);
    order_ = (1ULL << (base_->k() * m_)) - 1;
}

Point ExtField::mul(const Point& a, const Point& b) const {
    const Field* f = base_.get();
    std::vector<Elem> prod(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < m_; ++j) prod[i + j] ^= f->mul(a[i], b[j]);
    }
    // Reduce with the monic modulus.
    for (int d = 2 * m_ - 2; d >= m_; --d) {
        const Elem t = prod[d];
        if (!t) continue;
        prod[d] = 0;
        for (int j = 0; j < m_; ++j) prod[d - m_ + j] ^= f->mul(t, q_.coeff(j));
    }
    return Point(prod.begin(), prod.begin() + m_);
}

std::uint64_t ExtField::to_index(const Point& a) const {
    std::uint64_t idx = 0;
    for (int j = 0; j < m_; ++j)
        for (int i = 0; i < base_->k(); ++i)
            if (a[j] >> i & 1) idx |= 1ULL << (i * m_ + j);
    return idx;
}

Point ExtField::from_index(std::uint64_t idx) const {
    Point a(m_, 0);
    for (int j = 0; j < m_; ++j)
        for (int i = 0; i < base_->k(); ++i)
            if (idx >> (i * m_ + j) & 1) a[j] |= 1u << i;
    return a;
}

Matrix mult_to_matrix(const ExtField& e, const Point& g) {
    const int m = e.degree();
    Matrix a(e.base().get(), m);
    for (int c = 0; c < m; ++c) {
        Point basis(m, 0);
        basis[c] = 1;
        const Point col = e.mul(g, basis);
        for (int r = 0; r < m; ++r) a.at(r, c) = col[r];
    }
    return a;
}

bool is_generator_matrix(const Matrix& a) {
    const Field* f = a.field();
    const int m = a.dim();
    if (static_cast<long>(f->k()) * m > 20) throw PreconditionError("generator check limited to p^m <= 2^20");
    const std::uint64_t order = (1ULL << (f->k() * m)) - 1;
    const Point one = ones_vector(m);
    Point v = one, w(m);
    for (std::uint64_t i = 1; i <= order; ++i) {
        a.apply_into(v.data(), w.data());
        std::swap(v, w);
        if (v == one) return i == order;
    }
    return false;
}

CandidateSet build_candidate_set(FieldPtr base, int m) {
    ExtField e(base, m);
    const int cap = 4 * m * base->k();
    CandidateSet s;
    for (std::uint64_t idx = 2; idx < 2 + static_cast<std::uint64_t>(cap) && idx <= e.order(); ++idx) {
        Matrix a = mult_to_matrix(e, e.from_index(idx));
        const bool gen = is_generator_matrix(a);
        s.matrices.push_back(a);
        s.labels.push_back(idx);
        s.generator.push_back(gen);
        if (gen) return s;
    }
    throw ConstructionError("no generator matrix among the first 4 m log p candidates");
}

}  // namespace pdc
