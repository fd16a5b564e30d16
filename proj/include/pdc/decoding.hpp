#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pdc/linalg.hpp"
#include "pdc/poly.hpp"
#include "pdc/polymap.hpp"
#include "pdc/random.hpp"

namespace pdc {

struct Pair {
    Elem x;
    Elem y;
    friend bool operator==(const Pair&, const Pair&) = default;
    friend auto operator<=>(const Pair&, const Pair&) = default;
};

// Smallest integer a with a > sqrt(2 d b).
int sudan_min_agreement(int d, std::size_t b);

// All polynomials of degree <= d agreeing with at least a of the (deduplicated)
// pairs. Requires a > sqrt(2 d b). Result is sorted and every entry passed the
// agreement filter. Tries a unique-decoding shortcut first when the pairs have
// distinct abscissae and 2a - b > d.
std::vector<UniPoly> sudan_list_decode(const Field* f, std::vector<Pair> pairs, int d, int a);

// Same contract, always through bivariate interpolation and root finding.
std::vector<UniPoly> sudan_interpolation_decode(const Field* f, std::vector<Pair> pairs, int d, int a);

// Exhaustive search over all p^(d+1) polynomials; requires p^(d+1) <= 2^24.
std::vector<UniPoly> brute_force_list_decode(const Field* f, std::vector<Pair> pairs, int d, int a);

std::size_t agreement(const UniPoly& q, const std::vector<Pair>& pairs);

// Every z in {0,1}^ell whose Hadamard codeword agrees with h on at least a
// (1/2 + gamma/2) fraction of r, ascending. ell <= 24.
std::vector<std::uint32_t> hadamard_list_decode(const std::function<int(std::uint32_t)>& h, int ell,
                                                double gamma);

// Line-restriction self-corrector: decodes g on a random line through x.
// Requires delta < p/3; for g within 1/4 of a degree-delta polynomial P it
// returns P(x) with probability >= 2/3.
Elem pcorr(const PointOracle& g, const Field* f, int m, int delta, const Point& x, RandomStream& rng);

// Plurality of `votes` pcorr runs; vote k draws its randomness from
// seed.split(k), so the randomness is fixed across x.
Elem pcorr_majority(const PointOracle& g, const Field* f, int m, int delta, const Point& x, int votes,
                    const RandomStream& seed);

using IndexOracle = std::function<std::optional<std::uint64_t>(const Point&)>;

// Random self-reduction for the index of u in the orbit of the all-ones vector
// under A. Every returned value l satisfies A^l 1 = u; nullopt when all
// samples fail.
std::optional<std::uint64_t> dlcorr(const IndexOracle& g, const Matrix& a, const Point& u, int samples,
                                    RandomStream& rng);

std::uint64_t dlcorr_combine(std::uint64_t i, std::uint64_t j, std::uint64_t order);

using PartialOracle = std::function<std::optional<Elem>(const Point&)>;

int is_close_samples(double delta);
// Accepts iff b and p agree on ceil(3 log2(1/delta)) uniform points.
bool is_close(const PartialOracle& b, const PointOracle& p, const Field* f, int m, double delta,
              RandomStream& rng);

}  // namespace pdc
