#include "pdc/hitting_set.hpp"

#include <ostream>

#include "pdc/errors.hpp"
#include "pdc/random.hpp"

namespace pdc {

namespace {

class FunctionSource : public HittingSetSource {
public:
    FunctionSource(std::uint64_t count, std::size_t length, std::function<BitString(std::uint64_t)> at)
        : count_(count), length_(length), at_(std::move(at)) {}
    std::uint64_t count() const override { return count_; }
    std::size_t length() const override { return length_; }
    BitString at(std::uint64_t i) const override { return at_(i); }

private:
    std::uint64_t count_;
    std::size_t length_;
    std::function<BitString(std::uint64_t)> at_;
};

class UnionSource : public HittingSetSource {
public:
    explicit UnionSource(std::vector<HittingSet> parts) : parts_(std::move(parts)) {
        std::uint64_t acc = 0;
        for (const auto& p : parts_) {
            offsets_.push_back(acc);
            acc += p.count();
        }
        total_ = acc;
    }
    std::uint64_t count() const override { return total_; }
    std::size_t length() const override { return parts_.empty() ? 0 : parts_.front().length(); }
    BitString at(std::uint64_t i) const override {
        if (i >= total_) throw UsageError("hitting set index out of range");
        std::size_t lo = 0, hi = parts_.size();
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (offsets_[mid] <= i) lo = mid; else hi = mid;
        }
        return parts_[lo].at(i - offsets_[lo]);
    }

private:
    std::vector<HittingSet> parts_;
    std::vector<std::uint64_t> offsets_;
    std::uint64_t total_ = 0;
};

void check_cap(const HittingSet& h, std::uint64_t cap_bytes) {
    const long double bytes = static_cast<long double>(h.count()) * ((h.length() + 7) / 8);
    if (bytes > static_cast<long double>(cap_bytes)) throw ResourceError("hitting set exceeds byte cap");
}

}  // namespace

HittingSet HittingSet::from_function(std::uint64_t count, std::size_t length,
                                     std::function<BitString(std::uint64_t)> at) {
    return HittingSet(std::make_shared<FunctionSource>(count, length, std::move(at)));
}

HittingSet HittingSet::from_strings(std::vector<BitString> strings, std::size_t length) {
    for (const auto& s : strings)
        if (s.size() != length) throw UsageError("string length mismatch");
    auto shared = std::make_shared<std::vector<BitString>>(std::move(strings));
    const std::uint64_t n = shared->size();
    return from_function(n, length, [shared](std::uint64_t i) { return shared->at(i); });
}

HittingSet HittingSet::union_of(const std::vector<HittingSet>& parts) {
    for (const auto& p : parts)
        if (p.length() != parts.front().length()) throw UsageError("union of different lengths");
    return HittingSet(std::make_shared<UnionSource>(parts));
}

std::vector<BitString> HittingSet::materialize(std::uint64_t cap_bytes) const {
    check_cap(*this, cap_bytes);
    std::vector<BitString> out;
    out.reserve(count());
    for (std::uint64_t i = 0; i < count(); ++i) out.push_back(at(i));
    return out;
}

void HittingSet::write_stream(std::ostream& os, std::uint64_t cap_bytes) const {
    check_cap(*this, cap_bytes);
    for (std::uint64_t i = 0; i < count(); ++i) os << at(i).hex() << '\n';
}

Distinguisher complement_distinguisher(const HittingSet& h, std::uint64_t cap_bytes, double accept_fraction,
                                       std::uint64_t hash_seed) {
    if (h.length() > 64) throw UsageError("complement distinguisher needs length <= 64");
    check_cap(h, cap_bytes);
    auto members = std::make_shared<std::unordered_set<std::uint64_t>>();
    members->reserve(h.count() * 2);
    for (std::uint64_t i = 0; i < h.count(); ++i) members->insert(h.at(i).word());
    const std::uint64_t threshold =
        accept_fraction >= 1.0 ? UINT64_MAX
                               : static_cast<std::uint64_t>(accept_fraction * 18446744073709551615.0);
    Distinguisher d;
    d.length = h.length();
    d.fn = [members, threshold, hash_seed](const BitString& z) {
        if (members->count(z.word())) return false;
        return threshold == UINT64_MAX || hash_words({hash_seed, z.word()}) < threshold;
    };
    return d;
}

double acceptance_on(const Distinguisher& d, const HittingSet& h) {
    if (h.count() == 0) return 0.0;
    std::uint64_t acc = 0;
    for (std::uint64_t i = 0; i < h.count(); ++i) acc += d(h.at(i));
    return static_cast<double>(acc) / static_cast<double>(h.count());
}

}  // namespace pdc
