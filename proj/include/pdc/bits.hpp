#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pdc {

// Fixed-length bit string z_1..z_n; z_i lives in bit (i-1) of the packed words.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    // Low n bits of w, z_i = bit (i-1) of w.
    static BitString from_word(std::uint64_t w, std::size_t n);
    // "0101..." with the first character as z_1.
    static BitString from_binary(const std::string& s);
    // Hex of the string read big-endian (z_1 most significant), n bits.
    static BitString from_hex(const std::string& hex, std::size_t n);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
    void set(std::size_t i, bool b) {
        const std::uint64_t m = 1ULL << (i & 63);
        if (b) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }

    // Packed value for n <= 64.
    std::uint64_t word() const { return words_.empty() ? 0 : words_[0]; }
    // Overwrite with the low n bits of w; n <= 64.
    void assign_word(std::uint64_t w) {
        if (!words_.empty()) words_[0] = n_ >= 64 ? w : (w & ((1ULL << n_) - 1));
    }
    const std::vector<std::uint64_t>& words() const { return words_; }

    std::string binary() const;
    std::string hex() const;

    // The n-bit string as a big-endian unsigned integer (n <= 64).
    std::uint64_t big_endian_value() const;
    static BitString from_big_endian_value(std::uint64_t v, std::size_t n);

    friend bool operator==(const BitString&, const BitString&) = default;
    friend bool operator<(const BitString& a, const BitString& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (std::size_t i = 0; i < a.n_; ++i)
            if (a.get(i) != b.get(i)) return !a.get(i);
        return false;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitStringHash {
    std::size_t operator()(const BitString& s) const;
};

inline int parity32(std::uint32_t x) { return __builtin_parity(x); }

}  // namespace pdc
