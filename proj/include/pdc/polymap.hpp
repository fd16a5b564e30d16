#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pdc/linalg.hpp"
#include "pdc/poly.hpp"
#include "pdc/random.hpp"

namespace pdc {

using PointOracle = std::function<Elem(const Point&)>;

// Explicit m-variate polynomial as a list of monomials.
class MultiPoly {
public:
    struct Term {
        std::vector<int> exps;
        Elem coeff;
    };

    MultiPoly(FieldPtr f, int m) : f_(std::move(f)), m_(m) {}
    // Uniformly random coefficients on every monomial of total degree <= d.
    static MultiPoly random(FieldPtr f, int m, int d, RandomStream& rng);

    void add_term(std::vector<int> exps, Elem coeff);
    Elem eval(const Point& x) const;
    int total_degree() const;
    int arity() const { return m_; }
    const FieldPtr& field() const { return f_; }

private:
    FieldPtr f_;
    int m_;
    std::vector<Term> terms_;
};

// Evaluations of an m-variate polynomial on F^m in lexicographic order.
class TruthTable {
public:
    TruthTable(FieldPtr f, int m, std::optional<int> degree_bound, std::vector<Elem> values);
    static TruthTable tabulate(FieldPtr f, int m, std::optional<int> degree_bound, const PointOracle& p);

    const FieldPtr& field() const { return f_; }
    int arity() const { return m_; }
    std::optional<int> degree_bound() const { return deg_; }
    std::uint64_t size() const { return values_.size(); }
    const std::vector<Elem>& values() const { return values_; }

    Elem eval(const Point& x) const;
    Elem at(std::uint64_t index) const { return values_[index]; }
    PointOracle oracle() const;

    // Text format: "p m degree_bound" then one hex element per line.
    void save(std::ostream& os) const;
    static TruthTable load(std::istream& is);

private:
    FieldPtr f_;
    int m_;
    std::optional<int> deg_;
    std::vector<Elem> values_;
};

// Number of points of F^m; throws ResourceError when above the cap.
std::uint64_t point_count(const Field& f, int m, std::uint64_t cap = 1ULL << 26);

// Curve F -> F^m given by one univariate polynomial per coordinate.
class Curve {
public:
    Curve() = default;
    explicit Curve(std::vector<UniPoly> coords) : c_(std::move(coords)) {}
    static Curve random(const Field* f, int m, int degree, RandomStream& rng);

    int dim() const { return static_cast<int>(c_.size()); }
    int degree() const;
    const UniPoly& coord(int j) const { return c_[j]; }
    Point eval(Elem t) const;
    void eval_into(Elem t, Elem* out) const;

private:
    std::vector<UniPoly> c_;
};

}  // namespace pdc
