#include "pdc/bits.hpp"

#include <cctype>

#include "pdc/errors.hpp"
#include "pdc/random.hpp"

namespace pdc {

BitString BitString::from_word(std::uint64_t w, std::size_t n) {
    BitString s(n);
    if (n == 0) return s;
    s.words_[0] = n >= 64 ? w : (w & ((1ULL << n) - 1));
    return s;
}

BitString BitString::from_binary(const std::string& str) {
    BitString s(str.size());
    for (std::size_t i = 0; i < str.size(); ++i) {
        if (str[i] == '1') s.set(i, true);
        else if (str[i] != '0') throw UsageError("bit string must be binary");
    }
    return s;
}

BitString BitString::from_hex(const std::string& hex, std::size_t n) {
    std::string bin;
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw UsageError("bad hex digit");
        for (int b = 3; b >= 0; --b) bin.push_back((v >> b & 1) ? '1' : '0');
    }
    if (bin.size() < n) bin.insert(0, n - bin.size(), '0');
    for (std::size_t i = 0; i + n < bin.size(); ++i)
        if (bin[i] != '0') throw UsageError("hex value wider than string length");
    return from_binary(bin.substr(bin.size() - n));
}

std::string BitString::binary() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::string BitString::hex() const {
    static const char* digits = "0123456789abcdef";
    const std::size_t nd = (n_ + 3) / 4;
    const std::size_t pad = nd * 4 - n_;
    std::string out;
    out.reserve(nd);
    for (std::size_t d = 0; d < nd; ++d) {
        int v = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t pos = d * 4 + b;  // position in the padded string
            v <<= 1;
            if (pos >= pad && get(pos - pad)) v |= 1;
        }
        out.push_back(digits[v]);
    }
    return out;
}

std::uint64_t BitString::big_endian_value() const {
    if (n_ > 64) throw UsageError("string longer than 64 bits");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n_; ++i) v = (v << 1) | (get(i) ? 1 : 0);
    return v;
}

BitString BitString::from_big_endian_value(std::uint64_t v, std::size_t n) {
    if (n > 64) throw UsageError("string longer than 64 bits");
    BitString s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(n - 1 - i, v >> i & 1);
    return s;
}

std::size_t BitStringHash::operator()(const BitString& s) const {
    std::uint64_t h = s.size();
    for (auto w : s.words()) h = mix64(h ^ w);
    return static_cast<std::size_t>(h);
}

}  // namespace pdc
