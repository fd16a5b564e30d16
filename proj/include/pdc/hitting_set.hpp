#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <unordered_set>
#include <vector>

#include "pdc/bits.hpp"

namespace pdc {

// Lazily indexable multiset of n-bit strings.
class HittingSetSource {
public:
    virtual ~HittingSetSource() = default;
    virtual std::uint64_t count() const = 0;
    virtual std::size_t length() const = 0;
    virtual BitString at(std::uint64_t index) const = 0;
};

class HittingSet {
public:
    HittingSet() = default;
    explicit HittingSet(std::shared_ptr<const HittingSetSource> src) : src_(std::move(src)) {}

    static HittingSet from_function(std::uint64_t count, std::size_t length,
                                    std::function<BitString(std::uint64_t)> at);
    static HittingSet from_strings(std::vector<BitString> strings, std::size_t length);
    // Concatenation in the given order; all parts must share one length.
    static HittingSet union_of(const std::vector<HittingSet>& parts);

    std::uint64_t count() const { return src_ ? src_->count() : 0; }
    std::size_t length() const { return src_ ? src_->length() : 0; }
    BitString at(std::uint64_t index) const { return src_->at(index); }

    // Throws ResourceError when count * ceil(length/8) exceeds cap_bytes.
    std::vector<BitString> materialize(std::uint64_t cap_bytes) const;
    // One hex string per line; same cap as materialize.
    void write_stream(std::ostream& os, std::uint64_t cap_bytes) const;

private:
    std::shared_ptr<const HittingSetSource> src_;
};

// Boolean test on n-bit strings.
struct Distinguisher {
    std::size_t length = 0;
    std::function<bool(const BitString&)> fn;

    bool operator()(const BitString& z) const { return fn(z); }
};

// D(z) = 1 iff z is outside the set. With accept_fraction < 1 only a
// hash-selected fraction of the outside strings is accepted, which lowers the
// advantage to about accept_fraction. Requires length <= 64.
Distinguisher complement_distinguisher(const HittingSet& h, std::uint64_t cap_bytes, double accept_fraction = 1.0,
                                       std::uint64_t hash_seed = 0);

// Fraction of strings in h that D accepts.
double acceptance_on(const Distinguisher& d, const HittingSet& h);

}  // namespace pdc
