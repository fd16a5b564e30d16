#pragma once

#include <cstdint>
#include <vector>

#include "pdc/linalg.hpp"
#include "pdc/poly.hpp"

namespace pdc {

// F_{p^m} represented as F_p[X]/(q). For nice p and m a power of 3 the modulus
// is X^m + y with y the element x of F_p; otherwise X^m + c for the smallest
// c making it irreducible, falling back to the first monic irreducible in
// lexicographic order.
class ExtField {
public:
    ExtField(FieldPtr base, int m);

    const FieldPtr& base() const { return base_; }
    int degree() const { return m_; }
    const UniPoly& modulus() const { return q_; }
    std::uint64_t order() const { return order_; }  // p^m - 1

    Point mul(const Point& a, const Point& b) const;

    // Bit t = i*m + j of the index is bit i of coordinate j.
    std::uint64_t to_index(const Point& a) const;
    Point from_index(std::uint64_t idx) const;

private:
    FieldPtr base_;
    int m_;
    UniPoly q_;
    std::uint64_t order_;
};

// Matrix of v -> g v over F_p; column c is the coordinate vector of g X^c.
Matrix mult_to_matrix(const ExtField& e, const Point& g);

// True iff the orbit of the all-ones vector under a visits every nonzero
// vector. Requires p^m <= 2^20.
bool is_generator_matrix(const Matrix& a);

struct CandidateSet {
    std::vector<Matrix> matrices;
    std::vector<std::uint64_t> labels;  // ExtField index of each g
    std::vector<bool> generator;        // verification result per candidate
};

// Candidates A_g for g = x, x+1, ... in index order, stopping after the first
// verified generator. Throws ConstructionError if none appears within
// 4 m log p candidates.
CandidateSet build_candidate_set(FieldPtr base, int m);

}  // namespace pdc
