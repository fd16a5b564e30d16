#include "pdc/su_modified.hpp"

#include "pdc/errors.hpp"

namespace pdc {

HittingSet modified_generate(const PointOracle& p, const SuParams& params, const CandidateSet& cands) {
    std::vector<HittingSet> parts;
    for (const auto& a : cands.matrices) {
        parts.push_back(hsu_generate(p, a, params));
        parts.push_back(crypto_g(std::make_shared<IndexPermutation>(a), params.M));
    }
    return HittingSet::union_of(parts);
}

std::uint64_t exponent_shift(std::uint64_t j, std::uint64_t k, std::uint64_t order) {
    if (j < k) return k - j;
    return order - (j - k);
}

PredictorSet DistinguisherOracles::predictors(const Matrix&, const SuParams& params, const RandomStream& rng) const {
    return hybrid_predictors(d_, params, rng);
}

IndexOracle DistinguisherOracles::inverter(std::shared_ptr<const IndexPermutation> f, const ModifiedParams& params,
                                           const RandomStream& rng) const {
    auto fwd = [f](std::uint32_t x) { return f->apply(x); };
    auto inv = std::make_shared<GlInverter>(fwd, f->s(), params.su.M, d_, params.invert, rng.split(1));
    const Field* field = f->matrix().field();
    const std::uint64_t key = rng.split(2).key();
    return [inv, field, key](const Point& v) -> std::optional<std::uint64_t> {
        const auto y = static_cast<std::uint32_t>(pack_point(*field, v));
        RandomStream r(hash_words({key, y}));
        auto w = (*inv)(y, r);
        if (!w) return std::nullopt;
        return static_cast<std::uint64_t>(*w);
    };
}

PredictorSet PlantedOracles::predictors(const Matrix&, const SuParams& params, const RandomStream&) const {
    return planted_predictors(truth_, params);
}

IndexOracle PlantedOracles::inverter(std::shared_ptr<const IndexPermutation> f, const ModifiedParams&,
                                     const RandomStream&) const {
    auto table = std::make_shared<std::vector<std::uint32_t>>(1ULL << f->s(), 0);
    for (std::uint32_t x = 0; x < table->size(); ++x) (*table)[f->apply(x)] = x;
    const Field* field = f->matrix().field();
    const bool exact = exact_inverse_;
    return [table, field, exact](const Point& v) -> std::optional<std::uint64_t> {
        const auto y = pack_point(*field, v);
        const std::uint64_t w = (*table)[y];
        return exact ? w : (w + 1) % table->size();
    };
}

CandidateCircuit::CandidateCircuit(RsuResult rsu, Matrix a, IndexOracle inverter, Elem p_at_zero,
                                   const ModifiedParams& params, RandomStream rng)
    : rsu_(std::move(rsu)), a_(std::move(a)), inverter_(std::move(inverter)), p0_(p_at_zero),
      samples_(params.dlcorr_samples), runs_(params.dlcorr_runs), rng_(rng) {
    order_ = point_count(*a_.field(), a_.dim()) - 1;
    j_ = dlog(rsu_.v);
}

std::optional<std::uint64_t> CandidateCircuit::dlog(const Point& x) const {
    const std::uint64_t lex = lex_index(*a_.field(), x);
    for (int run = 0; run < runs_; ++run) {
        RandomStream r(hash_words({rng_.key(), lex, static_cast<std::uint64_t>(run)}));
        if (auto l = dlcorr(inverter_, a_, x, samples_, r)) return l;
    }
    return std::nullopt;
}

std::optional<Elem> CandidateCircuit::eval(const Point& x) const {
    if (is_zero(x)) return p0_;
    if (!j_) return std::nullopt;
    const std::uint64_t lex = lex_index(*a_.field(), x);
    if (auto it = memo_.find(lex); it != memo_.end()) return it->second;
    std::optional<Elem> out;
    if (auto k = dlog(x)) out = rsu_.circuit->eval(exponent_shift(*j_, *k, order_));
    memo_.emplace(lex, out);
    return out;
}

ReconCircuit::ReconCircuit(std::shared_ptr<const CandidateCircuit> c, const ModifiedParams& params, RandomStream seed)
    : c_(std::move(c)), f_(params.su.field.get()), m_(params.su.m), delta_(params.su.delta),
      votes_(params.pcorr_votes), seed_(seed) {}

Elem ReconCircuit::eval(const Point& x) const {
    const std::uint64_t lex = lex_index(*f_, x);
    if (auto it = memo_.find(lex); it != memo_.end()) return it->second;
    const auto* c = c_.get();
    PointOracle g = [c](const Point& y) { return c->eval(y).value_or(0); };
    const Elem v = pcorr_majority(g, f_, m_, delta_, x, votes_, seed_);
    memo_.emplace(lex, v);
    return v;
}

ReconOutcome modified_reconstruct(const PointOracle& p, const ReconOracles& oracles, const CandidateSet& cands,
                                  const ModifiedParams& params, RandomStream rng) {
    const SuParams& su = params.su;
    su.validate();
    const Field* f = su.field.get();
    const int m = su.m;
    const std::uint64_t npts = point_count(*f, m);
    const double close_delta = 1.0 / (4.0 * static_cast<double>(cands.matrices.size()) * static_cast<double>(npts));
    const Elem p0 = p(Point(m, 0));

    ReconOutcome out;
    std::shared_ptr<const CandidateCircuit> chosen;
    std::size_t chosen_index = 0;
    for (std::size_t idx = 0; idx < cands.matrices.size(); ++idx) {
        const Matrix& a = cands.matrices[idx];
        CandidateLog log;
        log.label = cands.labels[idx];
        log.verified_generator = cands.generator[idx];
        RandomStream cr = rng.split(idx);
        RandomStream rsu_rng = cr.split(10);
        auto rsu = rsu_reconstruct(p, a, su, oracles.predictors(a, su, cr.split(11)), rsu_rng);
        log.rsu_ok = rsu.has_value();
        if (rsu) {
            auto perm = std::make_shared<IndexPermutation>(a);
            auto cand = std::make_shared<CandidateCircuit>(*rsu, a, oracles.inverter(perm, params, cr.split(12)),
                                                           p0, params, cr.split(13));
            log.anchor_ok = cand->anchor_ok();
            if (log.anchor_ok) {
                RandomStream close_rng = cr.split(14);
                const auto* c = cand.get();
                log.is_close = is_close([c](const Point& x) { return c->eval(x); }, p, f, m, close_delta, close_rng);
            }
            if (log.is_close) {
                chosen = cand;
                chosen_index = idx;
            }
        }
        out.candidates.push_back(log);
        if (chosen) break;
    }
    if (!chosen) return out;

    auto circuit = std::make_shared<ReconCircuit>(chosen, params, rng.split(1000));
    circuit->set_candidate_index(chosen_index);
    RandomStream gate_rng = rng.split(1001);
    Point x(m);
    for (int s = 0; s < params.final_gate_points; ++s) {
        for (auto& c : x) c = static_cast<Elem>(gate_rng.below(f->size()));
        if (circuit->eval(x) != p(x)) return out;
    }
    out.gate_passed = true;
    out.circuit = circuit;
    return out;
}

}  // namespace pdc
