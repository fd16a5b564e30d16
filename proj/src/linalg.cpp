#include "pdc/linalg.hpp"

#include "pdc/errors.hpp"

namespace pdc {

Matrix Matrix::identity(const Field* f, int m) {
    Matrix r(f, m);
    for (int i = 0; i < m; ++i) r.at(i, i) = 1;
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (m_ != o.m_) throw UsageError("matrix dimension mismatch");
    Matrix r(f_, m_);
    for (int i = 0; i < m_; ++i)
        for (int k = 0; k < m_; ++k) {
            const Elem a = at(i, k);
            if (!a) continue;
            for (int j = 0; j < m_; ++j) r.at(i, j) ^= f_->mul(a, o.at(k, j));
        }
    return r;
}

void Matrix::apply_into(const Elem* v, Elem* out) const {
    for (int i = 0; i < m_; ++i) {
        Elem s = 0;
        for (int j = 0; j < m_; ++j) s ^= f_->mul(at(i, j), v[j]);
        out[i] = s;
    }
}

Point Matrix::apply(const Point& v) const {
    if (static_cast<int>(v.size()) != m_) throw UsageError("vector dimension mismatch");
    Point r(m_);
    apply_into(v.data(), r.data());
    return r;
}

Matrix Matrix::pow(std::uint64_t e) const {
    Matrix r = identity(f_, m_);
    auto& sq = squares();
    for (std::size_t i = 0; e; ++i, e >>= 1) {
        if (i == sq.size()) sq.push_back(sq.back() * sq.back());
        if (e & 1) r = r * sq[i];
    }
    return r;
}

std::vector<Matrix>& Matrix::squares() const {
    if (!squares_) {
        auto sq = std::make_shared<std::vector<Matrix>>();
        sq->push_back(*this);
        squares_ = std::move(sq);
    }
    return *squares_;
}

Point mat_pow_vec(const Matrix& a, std::uint64_t e, const Point& v) {
    if (a.dim() == 1) {
        return Point{a.field()->mul(a.field()->pow(a.at(0, 0), e), v.at(0))};
    }
    return a.pow_apply(e, v);
}

Point Matrix::pow_apply(std::uint64_t e, const Point& v) const {
    auto& sq = squares();
    Point x = v, tmp(m_);
    for (std::size_t i = 0; e; ++i, e >>= 1) {
        if (i == sq.size()) sq.push_back(sq.back() * sq.back());
        if (e & 1) {
            sq[i].apply_into(x.data(), tmp.data());
            x.swap(tmp);
        }
    }
    return x;
}

Point ones_vector(int m) { return Point(m, 1); }

bool is_zero(const Point& v) {
    for (auto x : v)
        if (x) return false;
    return true;
}

std::uint64_t lex_index(const Field& f, const Point& x) {
    std::uint64_t idx = 0;
    for (auto c : x) idx = idx * f.size() + c;
    return idx;
}

Point lex_point(const Field& f, int m, std::uint64_t index) {
    Point x(m);
    for (int j = m; j-- > 0;) {
        x[j] = static_cast<Elem>(index % f.size());
        index /= f.size();
    }
    return x;
}

std::uint64_t pack_point(const Field& f, const Point& v) {
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < v.size(); ++j) r |= static_cast<std::uint64_t>(v[j]) << (j * f.k());
    return r;
}

Point unpack_point(const Field& f, int m, std::uint64_t bits) {
    Point v(m);
    const std::uint64_t mask = f.size() - 1;
    for (int j = 0; j < m; ++j) v[j] = static_cast<Elem>(bits >> (j * f.k()) & mask);
    return v;
}

}  // namespace pdc
