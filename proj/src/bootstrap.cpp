#include "pdc/bootstrap.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstring>

#include "pdc/errors.hpp"

namespace pdc {

double DenseProperty::measured_density(std::size_t n, int samples, RandomStream& rng) const {
    if (samples < 1) throw UsageError("density audit needs samples");
    int hits = 0;
    BitString z(n);
    for (int s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < n; ++i) z.set(i, rng.bit());
        hits += contains(z);
    }
    return static_cast<double>(hits) / samples;
}

Distinguisher DenseProperty::as_distinguisher(std::size_t n) const {
    return Distinguisher{n, [this](const BitString& z) { return contains(z); }};
}

bool ParityProperty::contains(const BitString& z) const {
    int ones = 0;
    for (auto w : z.words()) ones += __builtin_popcountll(w);
    return ones % 2 == 0;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    static const std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : bases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (auto a : bases) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s && composite; ++r) {
            x = mulmod(x, x, n);
            composite = x != n - 1;
        }
        if (composite) return false;
    }
    return true;
}

bool PrimeProperty::contains(const BitString& z) const {
    if (z.size() == 0 || z.size() > 64) throw UsageError("primality property needs 1..64 bits");
    return z.get(0) && is_prime_u64(z.big_endian_value());
}

SubprocessProperty::SubprocessProperty(std::string command, int rho) : command_(std::move(command)), rho_(rho) {
    int in[2], out[2];
    if (pipe(in) != 0 || pipe(out) != 0) throw ResourceError("pipe failed");
    pid_ = fork();
    if (pid_ < 0) throw ResourceError("fork failed");
    if (pid_ == 0) {
        dup2(in[0], STDIN_FILENO);
        dup2(out[1], STDOUT_FILENO);
        close(in[0]);
        close(in[1]);
        close(out[0]);
        close(out[1]);
        execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in[0]);
    close(out[1]);
    to_child_ = in[1];
    from_child_ = fdopen(out[0], "r");
    std::signal(SIGPIPE, SIG_IGN);
}

SubprocessProperty::~SubprocessProperty() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_) std::fclose(from_child_);
    if (pid_ > 0) waitpid(pid_, nullptr, 0);
}

bool SubprocessProperty::contains(const BitString& z) const {
    const std::string line = z.hex() + "\n";
    if (write(to_child_, line.data(), line.size()) != static_cast<ssize_t>(line.size()))
        throw ResourceError("property subprocess closed its input");
    char buf[64];
    if (!std::fgets(buf, sizeof buf, from_child_)) throw ResourceError("property subprocess gave no answer");
    if (buf[0] == '1') return true;
    if (buf[0] == '0') return false;
    throw ConsistencyError("property subprocess answered neither 0 nor 1");
}

std::optional<BitString> brute_force_select(const HittingSet& h, const DenseProperty& q) {
    for (std::uint64_t i = 0; i < h.count(); ++i) {
        BitString z = h.at(i);
        if (q.contains(z)) return z;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> Schedule::n_at(int i) const {
    if (i < 0 || i >= static_cast<int>(log_n.size()) || log_n[i] > 62.5L) return std::nullopt;
    return static_cast<std::uint64_t>(std::llround(std::exp2(log_n[i])));
}

Schedule schedule_compute(int n0, int alpha, int beta, int c, int rho) {
    if (n0 < 2 || alpha < 1 || c < 1 || rho < 1) throw UsageError("schedule parameters out of range");
    if (beta < 2 * alpha) throw PreconditionError("schedule needs beta >= 2 alpha");
    Schedule s;
    s.n0 = n0;
    s.alpha = alpha;
    s.beta = beta;
    s.c = c;
    s.rho = rho;
    const long double l0 = std::log2(static_cast<long double>(n0));
    s.log_n.push_back(l0);
    s.log_T.push_back(2.0L * n0);
    for (int i = 0; i < 64; ++i) {
        s.log_n.push_back(s.log_n.back() * beta);
        if (s.log_n[i + 1] > s.log_T[i] / (static_cast<long double>(c) * rho)) {
            s.t = i;
            return s;
        }
        s.log_T.push_back(s.log_T.back() * alpha);
    }
    throw ConsistencyError("schedule did not cross over");
}

std::optional<long double> level_log_length(int n0, int level) {
    if (level < 0) throw UsageError("negative level");
    long double log_n = std::log2(static_cast<long double>(n0));
    long double n = n0;
    for (int l = 0; l < level; ++l) {
        // log2 n^(l+1) = 2^(n^(l))
        if (n > 16000) return std::nullopt;
        log_n = std::exp2(n);
        if (log_n > 16000) {
            if (l + 1 == level) return log_n;
            return std::nullopt;
        }
        n = std::exp2(log_n);
    }
    return log_n;
}

Registry::Registry(BootstrapConfig cfg, const DenseProperty& q)
    : cfg_(cfg), q_(&q), sched_(schedule_compute(cfg.n0, cfg.alpha, cfg.beta, cfg.c, cfg.rho)) {
    bf_.resize(sched_.t + 1);
    ladders_.resize(sched_.t + 1);
}

std::shared_ptr<const PolyLadder> Registry::ladder(int i) const {
    const auto bf = bf_value(i);
    if (!bf) return nullptr;
    if (!ladders_[i]) {
        auto l = std::make_shared<PolyLadder>(Field::make(cfg_.field_k), cfg_.h, cfg_.m, bf_circuit(i), *bf);
        for (int idx = 1; idx <= l->d_prime(); ++idx) l->table(idx);
        ladders_[i] = l;
    }
    return ladders_[i];
}

std::optional<int> Registry::level_of(std::uint64_t n) const {
    for (int i = 0; i <= sched_.t; ++i)
        if (sched_.n_at(i) == n) return i;
    return std::nullopt;
}

HittingSet Registry::hitting_set(int i) const {
    if (i < 0 || i > sched_.t) throw UsageError("level outside the schedule");
    const auto n = sched_.n_at(i);
    if (!n) throw ResourceError("level length does not fit");
    if (i == 0) {
        if (*n > static_cast<std::uint64_t>(cfg_.materialize_log2)) throw ResourceError("H_0 above the cap");
        const std::size_t len = *n;
        return HittingSet::from_function(1ULL << len, len,
                                         [len](std::uint64_t k) { return BitString::from_big_endian_value(k, len); });
    }
    // H_i is the Chen-Tell set of BF_(i-1) with output length n_i.
    const auto lad = ladder(i - 1);
    if (!lad) throw ResourceError("BF of the previous level is bottom");
    auto h = ct_generate(*lad, CtParams::toy(lad->field(), cfg_.h, cfg_.m, static_cast<int>(*n)));
    if (h.count() > (1ULL << cfg_.materialize_log2)) throw ResourceError("H_i above the cap");
    return h;
}

std::optional<BitString> Registry::bf_value(int i) const {
    if (i < 0 || i > sched_.t) throw UsageError("level outside the schedule");
    if (!bf_[i]) bf_[i] = brute_force_select(hitting_set(i), *q_);
    return *bf_[i];
}

LayeredCircuit Registry::bf_circuit(int i) const {
    const auto n = sched_.n_at(i);
    if (!n) throw ResourceError("level length does not fit");
    return LayeredCircuit::passthrough(static_cast<int>(*n), 2);
}

std::string case_name(BootstrapCase c) {
    switch (c) {
        case BootstrapCase::invalid_length: return "invalid-length";
        case BootstrapCase::case_one: return "case-I";
        case BootstrapCase::case_two: return "case-II";
        case BootstrapCase::over_cap: return "over-cap";
    }
    return "?";
}

BootstrapRun algorithm_b(std::uint64_t n, const Registry& reg, const DenseProperty& q, RandomStream rng) {
    BootstrapRun run;
    const auto level = reg.level_of(n);
    if (!level) return run;
    run.level = *level;
    const auto& sched = reg.schedule();
    const auto& cfg = reg.config();
    std::optional<BitString> z;
    try {
        if (*level < sched.t) {
            run.kind = BootstrapCase::case_one;
            const auto next = sched.n_at(*level + 1);
            if (!next) throw ResourceError("next length does not fit");
            const auto lad = reg.ladder(*level);
            if (!lad) return run;
            const auto d = q.as_distinguisher(*next);
            run.ct = ct_reconstruct(*lad, d, CtParams::toy(lad->field(), cfg.h, cfg.m, static_cast<int>(*next)), rng);
            z = run.ct->output;
        } else {
            run.kind = BootstrapCase::case_two;
            z = brute_force_select(reg.hitting_set(*level), q);
        }
    } catch (const ResourceError&) {
        run.kind = BootstrapCase::over_cap;
        return run;
    }
    if (z && z->size() == n && q.contains(*z)) run.output = z;
    return run;
}

}  // namespace pdc
