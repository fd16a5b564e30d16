#include "pdc/owp_prg.hpp"

#include <cmath>

#include "pdc/decoding.hpp"
#include "pdc/errors.hpp"

namespace pdc {

IndexPermutation::IndexPermutation(Matrix a) : a_(std::move(a)) {
    const Field& f = *a_.field();
    const int m = a_.dim();
    s_ = m * f.k();
    if (s_ > 24) throw PreconditionError("index permutation limited to s <= 24");
    const std::uint64_t n = 1ULL << s_;
    table_.assign(n, 0);
    // Walk the orbit of 1: table[i] = enc(A^i 1).
    Point v = ones_vector(m), w(m);
    for (std::uint64_t i = 1; i < n; ++i) {
        a_.apply_into(v.data(), w.data());
        std::swap(v, w);
        table_[i] = static_cast<std::uint32_t>(pack_point(f, v));
    }
}

std::uint32_t IndexPermutation::apply_direct(std::uint32_t x) const {
    if (x == 0) return 0;
    return static_cast<std::uint32_t>(pack_point(*a_.field(), mat_pow_vec(a_, x, ones_vector(a_.dim()))));
}

bool IndexPermutation::is_permutation() const {
    std::vector<bool> seen(table_.size(), false);
    for (auto y : table_) {
        if (seen[y]) return false;
        seen[y] = true;
    }
    return true;
}

BitString crypto_g_entry(const IndexPermutation& f, int M, std::uint32_t x, std::uint32_t r) {
    BitString out(M);
    std::uint32_t y = x;
    for (int k = 0; k < M; ++k) {
        out.set(k, parity32(y & r));
        y = f.apply(y);
    }
    return out;
}

HittingSet crypto_g(std::shared_ptr<const IndexPermutation> f, int M) {
    const int s = f->s();
    return HittingSet::from_function(1ULL << (2 * s), M, [f, M, s](std::uint64_t idx) {
        return crypto_g_entry(*f, M, static_cast<std::uint32_t>(idx >> s),
                              static_cast<std::uint32_t>(idx & ((1ULL << s) - 1)));
    });
}

std::optional<std::uint32_t> invert_with_predictor(const std::function<std::uint32_t(std::uint32_t)>& f, int s,
                                                   std::uint32_t y, const BitPredictor& predictor, double gamma) {
    for (auto w : hadamard_list_decode(predictor, s, gamma))
        if (f(w) == y) return w;
    return std::nullopt;
}

GlInverter::GlInverter(std::function<std::uint32_t(std::uint32_t)> f, int s, int M, Distinguisher d,
                       InvertConfig cfg, RandomStream rng)
    : f_(std::move(f)), s_(s), M_(M), d_(std::move(d)), cfg_(cfg) {
    if (static_cast<int>(d_.length) != M_) throw UsageError("distinguisher length must equal M");
    if (M_ < 1) throw UsageError("M must be positive");
    // Orientation from sampled generator outputs versus uniform strings.
    long gen = 0, uni = 0;
    const std::uint32_t mask = static_cast<std::uint32_t>((1ULL << s_) - 1);
    BitString z(M_);
    for (int t = 0; t < cfg_.orientation_samples; ++t) {
        std::uint32_t x = static_cast<std::uint32_t>(rng.next()) & mask;
        const std::uint32_t r = static_cast<std::uint32_t>(rng.next()) & mask;
        for (int k = 0; k < M_; ++k) {
            z.set(k, parity32(x & r));
            x = f_(x);
        }
        gen += d_(z);
        for (int k = 0; k < M_; ++k) z.set(k, rng.bit());
        uni += d_(z);
    }
    if (cfg_.orientation_samples > 0) advantage_ = static_cast<double>(uni - gen) / cfg_.orientation_samples;
    orientation_ = uni >= gen ? 1 : -1;
}

std::optional<std::uint32_t> GlInverter::operator()(std::uint32_t y, RandomStream& rng) const {
    // Hybrid position i (1-based): bits before i uniform, bit i guessed, bits
    // after i are <f^(k-1)(y), r> so that bit i is <f^{-1}(y), r>.
    const int i = 1 + static_cast<int>(rng.below(M_));
    std::vector<std::uint32_t> chain(M_ - i);
    std::uint32_t cur = y;
    for (auto& c : chain) {
        c = cur;
        cur = f_(cur);
    }
    const std::uint64_t key = rng.next();
    BitString z(M_);
    const bool accept_means_wrong = orientation_ > 0;
    BitPredictor predictor;
    std::vector<std::uint64_t> par;
    if (M_ <= 64 && s_ <= 24) {
        // word layout: z_(k+1) in bit k
        const std::uint64_t prefix = i >= 64 ? ~0ULL : (1ULL << (i - 1)) - 1;
        // par[r] packs <chain[k], r> at bit k; hk is hash_words({key, r}) with the key half done
        std::uint64_t col[32] = {};
        for (int k = 0; k < M_ - i; ++k)
            for (int b = 0; b < s_; ++b) col[b] |= static_cast<std::uint64_t>(chain[k] >> b & 1) << k;
        par.assign(std::size_t{1} << s_, 0);
        for (std::size_t r = 1; r < par.size(); ++r) par[r] = par[r & (r - 1)] ^ col[__builtin_ctzll(r)];
        const std::uint64_t hk = mix64(0x6a09e667f3bcc908ULL ^ mix64(key));
        predictor = [&, prefix, hk](std::uint32_t r) {
            const std::uint64_t h = mix64(hk ^ mix64(r));
            const int c = static_cast<int>(i - 1 < 63 ? h >> 63 : hash_words({key, r, 0xc0ffeeULL}) & 1);
            z.assign_word((h & prefix) | (static_cast<std::uint64_t>(c) << (i - 1)) | (i < 64 ? par[r] << i : 0));
            const bool accept = d_(z);
            return (accept == accept_means_wrong) ? 1 - c : c;
        };
    } else {
        predictor = [&](std::uint32_t r) {
            for (int k = 0; k < i - 1; ++k) z.set(k, hash_words({key, r, static_cast<std::uint64_t>(k)}) & 1);
            const int c = static_cast<int>(hash_words({key, r, 0xc0ffeeULL}) & 1);
            z.set(i - 1, c);
            for (int k = 0; k < M_ - i; ++k) z.set(i + k, parity32(chain[k] & r));
            const bool accept = d_(z);
            return (accept == accept_means_wrong) ? 1 - c : c;
        };
    }
    return invert_with_predictor(f_, s_, y, predictor, cfg_.gamma);
}

double crypto_g_statistical_distance(const IndexPermutation& f, int M) {
    if (M > 24) throw PreconditionError("statistical distance limited to M <= 24");
    const int s = f.s();
    std::vector<std::uint64_t> hist(1ULL << M, 0);
    for (std::uint64_t x = 0; x < (1ULL << s); ++x)
        for (std::uint64_t r = 0; r < (1ULL << s); ++r)
            ++hist[crypto_g_entry(f, M, static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(r)).word()];
    const long double total = std::ldexp(1.0L, 2 * s), u = std::ldexp(1.0L, -M);
    long double dist = 0;
    for (auto c : hist) dist += std::fabs(static_cast<long double>(c) / total - u);
    return static_cast<double>(dist / 2);
}

}  // namespace pdc
