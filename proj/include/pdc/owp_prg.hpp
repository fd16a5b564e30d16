#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "pdc/hitting_set.hpp"
#include "pdc/linalg.hpp"
#include "pdc/random.hpp"

namespace pdc {

// f_A on s = m log p bits: 0 -> 0, i -> encoding of A^i 1 (i read little-endian).
class IndexPermutation {
public:
    explicit IndexPermutation(Matrix a);

    int s() const { return s_; }
    const Matrix& matrix() const { return a_; }
    std::uint32_t apply(std::uint32_t x) const { return table_[x]; }
    // Direct evaluation through mat_pow_vec; used to cross-check the table.
    std::uint32_t apply_direct(std::uint32_t x) const;
    bool is_permutation() const;

private:
    Matrix a_;
    int s_;
    std::vector<std::uint32_t> table_;
};

// Output for seed (x, r): bit k is <f^(k-1)(x), r>, k = 1..M.
BitString crypto_g_entry(const IndexPermutation& f, int M, std::uint32_t x, std::uint32_t r);

// All 2^(2s) outputs; entry index is (x << s) | r.
HittingSet crypto_g(std::shared_ptr<const IndexPermutation> f, int M);

struct InvertConfig {
    double gamma = 0.2;            // Hadamard list-decoding radius parameter
    int orientation_samples = 400;  // samples used to orient a two-sided distinguisher
};

using BitPredictor = std::function<int(std::uint32_t r)>;

// Decode the predictor's Hadamard codeword and keep the first candidate w with f(w) = y.
std::optional<std::uint32_t> invert_with_predictor(const std::function<std::uint32_t(std::uint32_t)>& f, int s,
                                                   std::uint32_t y, const BitPredictor& predictor, double gamma);

// Inversion of f from a distinguisher for CryptoG^f_{s,M}, through a hybrid
// position, the next-bit predictor and Hadamard decoding. Every non-empty
// answer w satisfies f(w) = y.
class GlInverter {
public:
    GlInverter(std::function<std::uint32_t(std::uint32_t)> f, int s, int M, Distinguisher d, InvertConfig cfg,
               RandomStream rng);

    std::optional<std::uint32_t> operator()(std::uint32_t y, RandomStream& rng) const;

    // +1 when D accepts uniform strings at least as often as generator outputs.
    int orientation() const { return orientation_; }
    double measured_advantage() const { return advantage_; }

private:
    std::function<std::uint32_t(std::uint32_t)> f_;
    int s_, M_;
    Distinguisher d_;
    InvertConfig cfg_;
    int orientation_ = 1;
    double advantage_ = 0;
};

// Exact statistical distance between CryptoG^f_{s,M} and uniform on M bits;
// an upper bound on the advantage of any distinguisher. Requires M <= 24.
double crypto_g_statistical_distance(const IndexPermutation& f, int M);

}  // namespace pdc
