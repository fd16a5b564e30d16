#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pdc/hitting_set.hpp"
#include "pdc/linalg.hpp"
#include "pdc/polymap.hpp"
#include "pdc/random.hpp"

namespace pdc {

struct SuParams {
    FieldPtr field;
    int m = 1;                 // arity of P
    int M = 2;                 // output length
    int delta = 1;             // degree bound of P
    int r = 1;                 // guaranteed curve intersection size
    double rho = 0.25;         // predictor success parameter
    int list_size = 16;        // predictor list size (distinct values kept)
    int predictor_reps = 8;    // hybrid-predictor repetitions with fixed randomness
    double hadamard_gamma = 0.75;
    int curve_retries = 64;

    // r = 2 m log p, rho = 1/(8 M^2 m log p), list size rho^-2 capped at p.
    static SuParams defaults(FieldPtr f, int m, int M, int delta);

    int log_p() const { return field->k(); }
    std::uint32_t p() const { return field->size(); }
    int v() const { return (m + 1) * r - 1; }       // degree of the sampled curves
    int lnc_degree() const { return delta * v(); }  // degree of P restricted to a curve
    bool paper_regime() const;                      // p > delta^2 m^7 M^9
    // Failure bound of one Learn Next Curve call with the O(1) constants set to 1.
    double lnc_error_bound() const;
    void validate() const;
};

using EvalTable = std::vector<Elem>;  // values on a curve, indexed by t in F_p

// (P(A^(p^j) x), ..., P(A^(p^j M) x)).
std::vector<Elem> p_ary_prg(const PointOracle& p, const Matrix& a, int j, const Point& x, int M);

// Bit k of entry (j, x, r) is <P(A^(p^j k) x), r>; entry index is
// (j p^m + lex(x)) p + r, so the count is m p^(m+1).
HittingSet hsu_generate(PointOracle p, const Matrix& a, const SuParams& params);

struct PredictorQuery {
    int stride = 0;
    const Elem* previous = nullptr;  // previous[k-1] = P(A^(-k p^j) x), k = 1..M-1
    const Point* point = nullptr;    // x itself; consulted only by planted fixtures
};

class NextElementPredictor {
public:
    virtual ~NextElementPredictor() = default;
    // Appends the predicted list to out.
    virtual void predict(const PredictorQuery& q, std::vector<Elem>& out) const = 0;
    virtual bool needs_point() const { return false; }
};

using PredictorPtr = std::shared_ptr<const NextElementPredictor>;
using PredictorSet = std::vector<PredictorPtr>;  // one per stride j

// Next-element predictor obtained from an avoider D of the Boolean generator:
// random hybrid position, guess-and-check next-bit predictor, Hadamard
// decoding over r, union over repetitions with fixed randomness.
class HybridPredictor : public NextElementPredictor {
public:
    HybridPredictor(Distinguisher d, const SuParams& params, RandomStream rng);
    void predict(const PredictorQuery& q, std::vector<Elem>& out) const override;

private:
    Distinguisher d_;
    const Field* f_;
    int M_;
    int list_size_;
    double gamma_;
    std::vector<int> positions_;
    std::vector<std::uint64_t> keys_;
};

// Test fixture that bypasses D: returns P(x) for the hinted point.
class PlantedPredictor : public NextElementPredictor {
public:
    explicit PlantedPredictor(PointOracle p) : p_(std::move(p)) {}
    void predict(const PredictorQuery& q, std::vector<Elem>& out) const override { out.push_back(p_(*q.point)); }
    bool needs_point() const override { return true; }

private:
    PointOracle p_;
};

PredictorSet hybrid_predictors(const Distinguisher& d, const SuParams& params, const RandomStream& rng);
PredictorSet planted_predictors(const PointOracle& p, const SuParams& params);

struct LncStats {
    std::uint64_t calls = 0;
    std::uint64_t failures = 0;
    std::uint64_t ambiguous = 0;
};

// Learn P on the next curve from P on the M-1 previous curves of the stride-j
// sequence, disambiguating with reference values. inputs[k-1][t] is
// P(A^(-k p^j) C(t)); points (optional) holds C(t) for fixtures.
std::optional<EvalTable> learn_next_curve(const NextElementPredictor& pred, int stride,
                                          const std::vector<const EvalTable*>& inputs,
                                          const std::vector<Point>* points, const std::vector<Elem>& ref_t,
                                          const EvalTable& ref_values, const SuParams& params,
                                          LncStats* stats = nullptr);

struct GoodCurves {
    Curve c1, c2;
    std::vector<std::vector<Elem>> stride_refs;  // stride_refs[j] = {t : A^(p^j) C1(t) = C2(t)}
    std::vector<Elem> same_refs;                 // {t : C1(t) = C2(t)}
    std::vector<std::vector<Elem>> planted_sets;  // R_0..R_m used in the construction
};

// C1 random of degree v with C1(1) != 0; C2 interpolates A^(p^j) C1 on R_j and
// C1 on R_m. Throws ConstructionError after curve_retries failures.
GoodCurves sample_good_curves(const Matrix& a, const SuParams& params, RandomStream& rng);

std::vector<Elem> curve_agreement_set(const Curve& c1, const Matrix& a1, const Curve& c2, const Matrix& a2);

// The reconstruction circuit C'(i) = P(A^i v): hardwired P-tables on
// A^k C1, A^k C2 for k < M, then an m-round walk over the base-p digits of i.
class OrbitCircuit {
public:
    OrbitCircuit(PointOracle p, Matrix a, SuParams params, GoodCurves curves, PredictorSet preds);

    const Point& v() const { return v_; }
    std::optional<Elem> eval(std::uint64_t i) const;
    const LncStats& stats() const { return stats_; }
    std::uint64_t oracle_queries() const { return queries_; }

private:
    struct Entry {
        bool ok = false;
        EvalTable c1, c2;
    };
    const Entry& get(int l, std::uint64_t e) const;

    Matrix a_;
    SuParams params_;
    GoodCurves curves_;
    PredictorSet preds_;
    Point v_;
    std::vector<Point> c1_points_, c2_points_;
    std::vector<Entry> hardwired_;
    std::vector<std::uint64_t> p_pow_;
    bool need_points_ = false;
    mutable std::vector<Point> pts1_, pts2_;  // scratch for point-aware predictors
    std::uint64_t queries_ = 0;
    mutable std::unordered_map<std::uint64_t, Entry> memo_;
    mutable LncStats stats_;
};

struct RsuResult {
    Point v;
    std::shared_ptr<const OrbitCircuit> circuit;
};

std::optional<RsuResult> rsu_reconstruct(const PointOracle& p, const Matrix& a, const SuParams& params,
                                         const PredictorSet& preds, RandomStream& rng);

}  // namespace pdc
