#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdc/decoding.hpp"
#include "pdc/genmatrix.hpp"
#include "pdc/owp_prg.hpp"
#include "pdc/su_hsg.hpp"

namespace pdc {

struct ModifiedParams {
    SuParams su;
    int dlcorr_samples = 8;   // samples inside one DLCorr run
    int dlcorr_runs = 3;      // independent DLCorr runs (error reduction)
    InvertConfig invert;
    int pcorr_votes = 9;      // majority votes in the final self-corrector
    int final_gate_points = 100;
};

// Union over the candidate set of HSU(P, A) followed by CryptoG^{f_A}_{s,M}.
HittingSet modified_generate(const PointOracle& p, const SuParams& params, const CandidateSet& cands);

// i with A^i v = x, given v = A^j 1 and x = A^k 1.
std::uint64_t exponent_shift(std::uint64_t j, std::uint64_t k, std::uint64_t order);

// Where the reconstruction gets its predictors and its inverter for f_A.
class ReconOracles {
public:
    virtual ~ReconOracles() = default;
    virtual PredictorSet predictors(const Matrix& a, const SuParams& params, const RandomStream& rng) const = 0;
    // Index oracle g(v) ~ f_A^{-1}(enc(v)), used inside DLCorr.
    virtual IndexOracle inverter(std::shared_ptr<const IndexPermutation> f, const ModifiedParams& params,
                                 const RandomStream& rng) const = 0;
    virtual std::string name() const = 0;
};

// Everything derived from one distinguisher D: hybrid predictors and the
// hybrid/Hadamard inverter.
class DistinguisherOracles : public ReconOracles {
public:
    explicit DistinguisherOracles(Distinguisher d) : d_(std::move(d)) {}
    PredictorSet predictors(const Matrix& a, const SuParams& params, const RandomStream& rng) const override;
    IndexOracle inverter(std::shared_ptr<const IndexPermutation> f, const ModifiedParams& params,
                         const RandomStream& rng) const override;
    std::string name() const override { return "distinguisher"; }

private:
    Distinguisher d_;
};

// Test fixture bypassing D: exact predictions of `truth` and an exact inverse
// table. Pointing `truth` at a different polynomial makes an adversary.
class PlantedOracles : public ReconOracles {
public:
    explicit PlantedOracles(PointOracle truth, bool exact_inverse = true)
        : truth_(std::move(truth)), exact_inverse_(exact_inverse) {}
    PredictorSet predictors(const Matrix& a, const SuParams& params, const RandomStream& rng) const override;
    IndexOracle inverter(std::shared_ptr<const IndexPermutation> f, const ModifiedParams& params,
                         const RandomStream& rng) const override;
    std::string name() const override { return "planted"; }

private:
    PointOracle truth_;
    bool exact_inverse_;
};

// C_A(x) = P(0) for x = 0, else C'(exponent_shift(C''(v), C''(x))).
class CandidateCircuit {
public:
    CandidateCircuit(RsuResult rsu, Matrix a, IndexOracle inverter, Elem p_at_zero, const ModifiedParams& params,
                     RandomStream rng);
    std::optional<Elem> eval(const Point& x) const;
    bool anchor_ok() const { return j_.has_value(); }

private:
    std::optional<std::uint64_t> dlog(const Point& x) const;

    RsuResult rsu_;
    Matrix a_;
    IndexOracle inverter_;
    Elem p0_;
    int samples_, runs_;
    std::uint64_t order_;
    RandomStream rng_;
    std::optional<std::uint64_t> j_;
    mutable std::unordered_map<std::uint64_t, std::optional<Elem>> memo_;
};

// Final circuit: majority of pcorr runs over the selected candidate.
class ReconCircuit {
public:
    ReconCircuit(std::shared_ptr<const CandidateCircuit> c, const ModifiedParams& params, RandomStream seed);
    Elem eval(const Point& x) const;
    std::size_t candidate_index() const { return index_; }
    void set_candidate_index(std::size_t i) { index_ = i; }

private:
    std::shared_ptr<const CandidateCircuit> c_;
    const Field* f_;
    int m_, delta_, votes_;
    RandomStream seed_;
    std::size_t index_ = 0;
    mutable std::unordered_map<std::uint64_t, Elem> memo_;
};

struct CandidateLog {
    std::uint64_t label = 0;
    bool verified_generator = false;
    bool rsu_ok = false;
    bool anchor_ok = false;
    bool is_close = false;
};

struct ReconOutcome {
    std::shared_ptr<const ReconCircuit> circuit;  // null means bottom
    std::vector<CandidateLog> candidates;
    bool gate_passed = false;
};

ReconOutcome modified_reconstruct(const PointOracle& p, const ReconOracles& oracles, const CandidateSet& cands,
                                  const ModifiedParams& params, RandomStream rng);

}  // namespace pdc
