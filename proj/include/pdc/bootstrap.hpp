#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdc/chen_tell.hpp"

namespace pdc {

// Q_n as a total membership test; density |Q_n| / 2^n >= n^-rho is declared.
class DenseProperty {
public:
    virtual ~DenseProperty() = default;
    virtual bool contains(const BitString& z) const = 0;
    virtual std::string name() const = 0;
    virtual int rho() const = 0;

    // Fraction of `samples` uniform n-bit strings in Q.
    double measured_density(std::size_t n, int samples, RandomStream& rng) const;
    Distinguisher as_distinguisher(std::size_t n) const;
};

class LeadingBitProperty : public DenseProperty {
public:
    bool contains(const BitString& z) const override { return z.size() > 0 && z.get(0); }
    std::string name() const override { return "leading-bit"; }
    int rho() const override { return 0; }
};

// Even number of ones.
class ParityProperty : public DenseProperty {
public:
    bool contains(const BitString& z) const override;
    std::string name() const override { return "parity"; }
    int rho() const override { return 0; }
};

// n-bit primes: z read big-endian, leading bit 1, prime (n <= 64).
class PrimeProperty : public DenseProperty {
public:
    bool contains(const BitString& z) const override;
    std::string name() const override { return "primality"; }
    int rho() const override { return 2; }
};

// External decider: one hex string per line in, "0" or "1" per line out.
class SubprocessProperty : public DenseProperty {
public:
    SubprocessProperty(std::string command, int rho);
    ~SubprocessProperty() override;
    SubprocessProperty(const SubprocessProperty&) = delete;
    SubprocessProperty& operator=(const SubprocessProperty&) = delete;

    bool contains(const BitString& z) const override;
    std::string name() const override { return "subprocess:" + command_; }
    int rho() const override { return rho_; }

private:
    std::string command_;
    int rho_;
    int pid_ = -1;
    int to_child_ = -1;
    std::FILE* from_child_ = nullptr;
};

// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

std::optional<BitString> brute_force_select(const HittingSet& h, const DenseProperty& q);

struct Schedule {
    int n0 = 0, alpha = 0, beta = 0, c = 1, rho = 1;
    std::vector<long double> log_n;  // i = 0..t+1
    std::vector<long double> log_T;  // i = 0..t, log T_i = alpha^i * 2 n0
    int t = 0;

    bool within_bound() const { return t <= std::log2(static_cast<long double>(n0)); }
    // n_i when it fits in 63 bits.
    std::optional<std::uint64_t> n_at(int i) const;
};

// t is the first i with n_(i+1) > T_i^(1/(c rho)); needs beta >= 2 alpha.
Schedule schedule_compute(int n0, int alpha, int beta, int c, int rho);

// log2 of the level-l starting length n0^(l), with n0^(l) = 2^(2^(n0^(l-1)));
// empty once it leaves long double range.
std::optional<long double> level_log_length(int n0, int level);

struct BootstrapConfig {
    int n0 = 4;
    int alpha = 1;
    int beta = 2;
    int c = 1;
    int rho = 1;
    int h = 4;                 // Chen-Tell ladder for Case I
    int m = 1;
    int field_k = 6;
    int materialize_log2 = 20;  // H_i is materialized only when |H_i| <= 2^this
};

// The per-length objects of one ladder level: schedule, H_i and BF_i values.
class Registry {
public:
    Registry(BootstrapConfig cfg, const DenseProperty& q);

    const BootstrapConfig& config() const { return cfg_; }
    const Schedule& schedule() const { return sched_; }
    std::optional<int> level_of(std::uint64_t n) const;
    // Throws ResourceError above the materialization cap.
    HittingSet hitting_set(int i) const;
    std::optional<BitString> bf_value(int i) const;
    // Layered circuit standing in for BF_i: its answer hardwired as the input
    // of a double-NAND passthrough.
    LayeredCircuit bf_circuit(int i) const;
    // Ladder of BF_i's circuit on BF_i's value; built once. Null when BF_i is bottom.
    std::shared_ptr<const PolyLadder> ladder(int i) const;

private:
    BootstrapConfig cfg_;
    const DenseProperty* q_;
    Schedule sched_;
    mutable std::vector<std::optional<std::optional<BitString>>> bf_;
    mutable std::vector<std::shared_ptr<const PolyLadder>> ladders_;
};

enum class BootstrapCase { invalid_length, case_one, case_two, over_cap };

struct BootstrapRun {
    BootstrapCase kind = BootstrapCase::invalid_length;
    int level = -1;
    std::optional<BitString> output;  // empty means bottom
    std::optional<CtOutcome> ct;
};

std::string case_name(BootstrapCase c);

BootstrapRun algorithm_b(std::uint64_t n, const Registry& reg, const DenseProperty& q, RandomStream rng);

}  // namespace pdc
