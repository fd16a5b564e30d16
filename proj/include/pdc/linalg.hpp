#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pdc/field.hpp"

namespace pdc {

using Point = std::vector<Elem>;

// Square matrix over a binary field, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(const Field* f, int m) : f_(f), m_(m), a_(static_cast<std::size_t>(m) * m, 0) {}
    static Matrix identity(const Field* f, int m);

    const Field* field() const { return f_; }
    int dim() const { return m_; }
    Elem at(int r, int c) const { return a_[static_cast<std::size_t>(r) * m_ + c]; }
    Elem& at(int r, int c) {
        squares_.reset();
        return a_[static_cast<std::size_t>(r) * m_ + c];
    }

    Matrix operator*(const Matrix& o) const;
    Point apply(const Point& v) const;
    void apply_into(const Elem* v, Elem* out) const;
    Matrix pow(std::uint64_t e) const;
    // A^e v from cached repeated squares.
    Point pow_apply(std::uint64_t e, const Point& v) const;

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.m_ == b.m_ && a.a_ == b.a_; }

private:
    const Field* f_ = nullptr;
    int m_ = 0;
    std::vector<Elem> a_;
    std::vector<Matrix>& squares() const;

    mutable std::shared_ptr<std::vector<Matrix>> squares_;
};

// A^e v by repeated squaring.
Point mat_pow_vec(const Matrix& a, std::uint64_t e, const Point& v);

Point ones_vector(int m);
bool is_zero(const Point& v);

// Lexicographic rank of a point of F^m (first coordinate most significant).
std::uint64_t lex_index(const Field& f, const Point& x);
Point lex_point(const Field& f, int m, std::uint64_t index);

// Concatenated coordinate encodings as an (m*k)-bit integer, coordinate j in bits [j*k, (j+1)*k).
std::uint64_t pack_point(const Field& f, const Point& v);
Point unpack_point(const Field& f, int m, std::uint64_t bits);

}  // namespace pdc
