#pragma once

#include <cstdint>
#include <limits>
#include <initializer_list>

namespace pdc {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Order-sensitive hash of a short word sequence; used to derive fixed
// randomness from (seed, query) pairs.
inline std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (auto w : words) h = mix64(h ^ mix64(w));
    return h;
}

// Counter-based stream. A stream is identified by a 64-bit key; output j is
// mix64(key + j * golden). Children are derived by hashing the key with a tag,
// so one global seed fans out into independent module streams.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed = 0) : key_(mix64(seed ^ 0x243f6a8885a308d3ULL)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next(); }

    std::uint64_t next() { return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    RandomStream split(std::uint64_t tag) const {
        RandomStream child;
        child.key_ = hash_words({key_, tag, 0x13198a2e03707344ULL});
        return child;
    }

    std::uint64_t key() const { return key_; }

    // Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = max() - max() % n;
        for (;;) {
            const std::uint64_t x = next();
            if (x < limit) return x % n;
        }
    }

    bool bit() { return next() & 1ULL; }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace pdc
