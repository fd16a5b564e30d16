#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <vector>

#include "pdc/bootstrap.hpp"
#include "pdc/errors.hpp"

using namespace pdc;

namespace {

std::vector<bool> sieve(std::size_t n) {
    std::vector<bool> p(n + 1, true);
    p[0] = p[1] = false;
    for (std::size_t i = 2; i * i <= n; ++i)
        if (p[i])
            for (std::size_t j = i * i; j <= n; j += i) p[j] = false;
    return p;
}

HittingSet all_strings(std::size_t n) {
    return HittingSet::from_function(1ULL << n, n, [n](std::uint64_t k) { return BitString::from_big_endian_value(k, n); });
}

class EmptyProperty : public DenseProperty {
public:
    bool contains(const BitString&) const override { return false; }
    std::string name() const override { return "empty"; }
    int rho() const override { return 1; }
};

}  // namespace

TEST(Primality, MillerRabinMatchesSieve) {
    const auto p = sieve(1 << 20);
    for (std::uint64_t n = 0; n <= (1 << 20); ++n) ASSERT_EQ(is_prime_u64(n), p[n]) << n;
    EXPECT_TRUE(is_prime_u64(18446744073709551557ULL));
    EXPECT_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
}

TEST(BruteForce, FirstAcceptedInLexOrder) {
    LeadingBitProperty lead;
    auto z = brute_force_select(all_strings(4), lead);
    ASSERT_TRUE(z);
    EXPECT_EQ(z->binary(), "1000");

    EmptyProperty none;
    EXPECT_FALSE(brute_force_select(all_strings(4), none));
}

TEST(BruteForce, SixteenBitPrime) {
    PrimeProperty q;
    auto z = brute_force_select(all_strings(16), q);
    ASSERT_TRUE(z);
    const auto p = sieve(1 << 16);
    std::uint64_t want = 0;
    for (std::uint64_t n = 1 << 15; n < (1 << 16); ++n)
        if (p[n]) {
            want = n;
            break;
        }
    EXPECT_EQ(z->big_endian_value(), want);
    EXPECT_EQ(want, 32771u);
}

TEST(Schedule, WorkedExample) {
    auto s = schedule_compute(16, 2, 4, 1, 1);
    EXPECT_EQ(s.t, 2);
    EXPECT_TRUE(s.within_bound());
    EXPECT_EQ(s.n_at(0), 16u);
    EXPECT_EQ(s.n_at(1), 65536u);
}

TEST(Schedule, BetaBelowTwoAlphaThrows) {
    EXPECT_THROW(schedule_compute(16, 3, 5, 1, 1), PreconditionError);
}

TEST(Schedule, CrossoverDefinition) {
    for (int n0 : {4, 8, 16, 64, 256, 1024})
        for (int alpha = 1; alpha <= 8; ++alpha)
            for (int rho : {1, 2, 3}) {
                auto s = schedule_compute(n0, alpha, 2 * alpha, 1, rho);
                for (int i = 0; i + 1 < static_cast<int>(s.log_n.size()); ++i) EXPECT_LT(s.log_n[i], s.log_n[i + 1]);
                // direct recomputation
                const long double l0 = std::log2(static_cast<long double>(n0));
                int t = -1;
                for (int i = 0; t < 0; ++i) {
                    long double ln = l0 * std::pow(2.0L * alpha, i + 1);
                    long double lt = 2.0L * n0 * std::pow(static_cast<long double>(alpha), i);
                    if (ln > lt / rho) t = i;
                }
                EXPECT_EQ(s.t, t);
                EXPECT_TRUE(s.within_bound()) << n0 << " " << alpha << " " << rho;
            }
}

TEST(Schedule, LevelLengths) {
    EXPECT_DOUBLE_EQ(static_cast<double>(*level_log_length(4, 0)), 2.0);
    EXPECT_DOUBLE_EQ(static_cast<double>(*level_log_length(4, 1)), 16.0);  // 2^(2^4)
    EXPECT_DOUBLE_EQ(static_cast<double>(*level_log_length(2, 2)), 65536.0);  // 2 -> 16 -> 2^65536
    EXPECT_FALSE(level_log_length(4, 3));
}

TEST(Density, MeasuredAgreesWithDeclared) {
    RandomStream rng(3);
    LeadingBitProperty lead;
    ParityProperty par;
    PrimeProperty prime;
    EXPECT_NEAR(lead.measured_density(32, 20000, rng), 0.5, 0.02);
    EXPECT_NEAR(par.measured_density(32, 20000, rng), 0.5, 0.02);
    // 16-bit primes with top bit set: 3030 / 65536
    EXPECT_NEAR(prime.measured_density(16, 20000, rng), 3030.0 / 65536, 0.01);
    EXPECT_GE(prime.measured_density(16, 20000, rng), std::pow(16.0, -prime.rho()));
}

TEST(Subprocess, AnswersThroughPipe) {
    // accept strings whose hex starts with 8..f
    SubprocessProperty q("while read x; do case $x in [89a-f]*) echo 1;; *) echo 0;; esac; done", 1);
    LeadingBitProperty lead;
    RandomStream rng(4);
    for (int s = 0; s < 50; ++s) {
        BitString z(8);
        for (std::size_t i = 0; i < 8; ++i) z.set(i, rng.bit());
        EXPECT_EQ(q.contains(z), lead.contains(z)) << z.binary();
    }
}

TEST(AlgorithmB, InvalidLengthIsBottom) {
    LeadingBitProperty q;
    Registry reg(BootstrapConfig{}, q);
    auto run = algorithm_b(5, reg, q, RandomStream(1));
    EXPECT_EQ(run.kind, BootstrapCase::invalid_length);
    EXPECT_FALSE(run.output);
}

TEST(AlgorithmB, CaseTwoPrimeDemo) {
    PrimeProperty q;
    BootstrapConfig cfg;
    cfg.n0 = 16;
    cfg.beta = 4;
    cfg.rho = 3;
    Registry reg(cfg, q);
    ASSERT_EQ(reg.schedule().t, 0);
    auto run = algorithm_b(16, reg, q, RandomStream(1));
    EXPECT_EQ(run.kind, BootstrapCase::case_two);
    ASSERT_TRUE(run.output);
    EXPECT_EQ(run.output->big_endian_value(), 32771u);
}

TEST(AlgorithmB, CaseOneOutputIsBottomOrInQ) {
    LeadingBitProperty q;
    BootstrapConfig cfg;
    Registry reg(cfg, q);
    ASSERT_EQ(reg.schedule().t, 2);
    ASSERT_TRUE(reg.bf_value(0));
    EXPECT_EQ(reg.bf_value(0)->binary(), "1000");
    auto run = algorithm_b(4, reg, q, RandomStream(2));
    EXPECT_EQ(run.kind, BootstrapCase::case_one);
    ASSERT_TRUE(run.ct);
    if (run.output) {
        EXPECT_EQ(*run.output, *reg.bf_value(0));
        EXPECT_TRUE(q.contains(*run.output));
    }
}

TEST(AlgorithmB, HigherLevelsAreOverCap) {
    LeadingBitProperty q;
    BootstrapConfig cfg;
    Registry reg(cfg, q);
    auto run = algorithm_b(256, reg, q, RandomStream(2));
    EXPECT_EQ(run.kind, BootstrapCase::over_cap);
    EXPECT_FALSE(run.output);
}
