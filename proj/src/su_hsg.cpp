#include "pdc/su_hsg.hpp"

#include <algorithm>
#include <cmath>

#include "pdc/decoding.hpp"
#include "pdc/errors.hpp"

namespace pdc {

SuParams SuParams::defaults(FieldPtr f, int m, int M, int delta) {
    SuParams s;
    s.field = std::move(f);
    s.m = m;
    s.M = M;
    s.delta = delta;
    const int lp = s.field->k();
    s.r = 2 * m * lp;
    s.rho = 1.0 / (8.0 * M * M * m * lp);
    const double ls = std::ceil(1.0 / (s.rho * s.rho));
    s.list_size = static_cast<int>(std::min<double>(ls, s.field->size()));
    s.predictor_reps = 3 * M;
    return s;
}

bool SuParams::paper_regime() const {
    const long double rhs = std::pow(static_cast<long double>(delta), 2) * std::pow(static_cast<long double>(m), 7) *
                            std::pow(static_cast<long double>(M), 9);
    return static_cast<long double>(p()) > rhs;
}

double SuParams::lnc_error_bound() const {
    const double pp = static_cast<double>(p());
    const double a = std::pow(v() / (rho * pp), v() / 2.0);
    const double b = 8.0 / (rho * rho * rho) * std::pow(static_cast<double>(v()) * delta / pp, r);
    return a + b;
}

void SuParams::validate() const {
    if (!field) throw UsageError("SU parameters need a field");
    if (m < 1 || M < 2 || delta < 0 || r < 1) throw UsageError("SU parameters out of range");
    if (static_cast<std::uint64_t>(m + 1) * r > p()) throw PreconditionError("(m+1) r must not exceed p");
    if (list_size < 1 || predictor_reps < 1) throw UsageError("predictor parameters out of range");
}

std::vector<Elem> p_ary_prg(const PointOracle& p, const Matrix& a, int j, const Point& x, int M) {
    const std::uint64_t stride = 1ULL << (a.field()->k() * j);
    const Matrix step = a.pow(stride);
    std::vector<Elem> out(M);
    Point y = x;
    for (int k = 0; k < M; ++k) {
        y = step.apply(y);
        out[k] = p(y);
    }
    return out;
}

HittingSet hsu_generate(PointOracle p, const Matrix& a, const SuParams& params) {
    const Field& f = *params.field;
    const int m = params.m, M = params.M;
    const std::uint64_t npts = point_count(f, m);
    auto steps = std::make_shared<std::vector<Matrix>>();
    for (int j = 0; j < m; ++j) steps->push_back(a.pow(1ULL << (f.k() * j)));
    const std::uint64_t count = static_cast<std::uint64_t>(m) * npts * f.size();
    const Field* fp = &f;
    auto keep = params.field;
    return HittingSet::from_function(count, M, [p, steps, fp, keep, m, M, npts](std::uint64_t idx) {
        const std::uint32_t r = static_cast<std::uint32_t>(idx % fp->size());
        idx /= fp->size();
        const std::uint64_t xi = idx % npts;
        const int j = static_cast<int>(idx / npts);
        Point y = lex_point(*fp, m, xi), w(m);
        BitString out(M);
        for (int k = 0; k < M; ++k) {
            (*steps)[j].apply_into(y.data(), w.data());
            std::swap(y, w);
            out.set(k, parity32(p(y) & r));
        }
        return out;
    });
}

HybridPredictor::HybridPredictor(Distinguisher d, const SuParams& params, RandomStream rng)
    : d_(std::move(d)), f_(params.field.get()), M_(params.M), list_size_(params.list_size),
      gamma_(params.hadamard_gamma) {
    if (static_cast<int>(d_.length) != M_) throw UsageError("distinguisher length must equal M");
    for (int t = 0; t < params.predictor_reps; ++t) {
        positions_.push_back(1 + static_cast<int>(rng.below(M_)));
        keys_.push_back(rng.next());
    }
}

void HybridPredictor::predict(const PredictorQuery& q, std::vector<Elem>& list) const {
    const int lp = f_->k();
    std::uint64_t qh = static_cast<std::uint64_t>(q.stride);
    for (int k = 0; k < M_ - 1; ++k) qh = hash_words({qh, q.previous[k]});
    const std::size_t base = list.size();
    BitString z(M_);
    for (std::size_t rep = 0; rep < positions_.size(); ++rep) {
        const int i = positions_[rep];
        auto bit_pred = [&](std::uint32_t r) {
            // Bits 1..i-1 come from the known prefix: z_l = <P(A^(-(i-l) p^j) x), r>.
            for (int l = 1; l < i; ++l) z.set(l - 1, parity32(q.previous[i - l - 1] & r));
            const std::uint64_t h = hash_words({keys_[rep], qh, r});
            const int c = static_cast<int>(h & 1);
            z.set(i - 1, c);
            for (int l = i + 1; l <= M_; ++l) {
                const int off = l - i;
                const bool b = off < 63 ? (h >> off & 1) : (hash_words({h, static_cast<std::uint64_t>(l)}) & 1);
                z.set(l - 1, b);
            }
            return d_(z) ? 1 - c : c;
        };
        for (auto cand : hadamard_list_decode(bit_pred, lp, gamma_))
            if (std::find(list.begin() + base, list.end(), cand) == list.end()) list.push_back(cand);
    }
    if (list.size() - base > static_cast<std::size_t>(list_size_)) list.resize(base + list_size_);
}

PredictorSet hybrid_predictors(const Distinguisher& d, const SuParams& params, const RandomStream& rng) {
    PredictorSet s;
    for (int j = 0; j < params.m; ++j)
        s.push_back(std::make_shared<HybridPredictor>(d, params, rng.split(static_cast<std::uint64_t>(j))));
    return s;
}

PredictorSet planted_predictors(const PointOracle& p, const SuParams& params) {
    auto pred = std::make_shared<PlantedPredictor>(p);
    return PredictorSet(params.m, pred);
}

namespace {

// Weights w[t][i] with Q(t) = sum_i w[t][i] Q(i) for deg Q <= d, i <= d < t.
struct LowDegreeWeights {
    const Field* f = nullptr;
    int d = -1;
    std::vector<std::vector<Elem>> w;

    static const LowDegreeWeights& get(const Field* f, int d) {
        thread_local std::vector<LowDegreeWeights> cache;
        for (const auto& c : cache)
            if (c.f == f && c.d == d) return c;
        LowDegreeWeights c;
        c.f = f;
        c.d = d;
        for (Elem t = d + 1; t < f->size(); ++t) {
            std::vector<Elem> row(d + 1);
            for (int i = 0; i <= d; ++i) {
                Elem num = 1, den = 1;
                for (int j = 0; j <= d; ++j) {
                    if (j == i) continue;
                    num = f->mul(num, f->add(t, j));
                    den = f->mul(den, f->add(i, j));
                }
                row[i] = f->div(num, den);
            }
            c.w.push_back(std::move(row));
        }
        cache.push_back(std::move(c));
        return cache.back();
    }

    bool fits(const std::vector<Pair>& table) const {
        for (std::size_t t = 0; t < table.size(); ++t)
            if (table[t].x != t) return false;
        for (std::size_t t = d + 1; t < table.size(); ++t) {
            const auto& row = w[t - d - 1];
            Elem v = 0;
            for (int i = 0; i <= d; ++i) v = f->add(v, f->mul(row[i], table[i].y));
            if (v != table[t].y) return false;
        }
        return true;
    }
};

}  // namespace

std::optional<EvalTable> learn_next_curve(const NextElementPredictor& pred, int stride,
                                          const std::vector<const EvalTable*>& inputs,
                                          const std::vector<Point>* points, const std::vector<Elem>& ref_t,
                                          const EvalTable& ref_values, const SuParams& params, LncStats* stats) {
    const Field* f = params.field.get();
    const std::uint32_t p = f->size();
    const int M = params.M;
    if (static_cast<int>(inputs.size()) != M - 1) throw UsageError("learn_next_curve needs M-1 input tables");
    if (stats) ++stats->calls;
    std::vector<Pair> pairs;
    pairs.reserve(p);
    std::vector<Elem> prev(M - 1), list;
    for (Elem t = 0; t < p; ++t) {
        for (int k = 0; k < M - 1; ++k) prev[k] = (*inputs[k])[t];
        PredictorQuery q{stride, prev.data(), points ? &(*points)[t] : nullptr};
        list.clear();
        pred.predict(q, list);
        for (auto e : list) pairs.push_back({t, e});
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    const int d = params.lnc_degree();
    const int a = sudan_min_agreement(d, pairs.size());
    auto fail = [&]() -> std::optional<EvalTable> {
        if (stats) ++stats->failures;
        return std::nullopt;
    };
    if (pairs.empty() || a > static_cast<int>(p)) return fail();
    // A full table inside the unique-decoding radius: the list is the table
    // itself when it has low degree.
    if (pairs.size() == p && d < static_cast<int>(p) && 2 * a - static_cast<int>(p) > d &&
        LowDegreeWeights::get(f, d).fits(pairs)) {
        for (Elem t : ref_t)
            if (pairs[t].y != ref_values[t]) return fail();
        EvalTable out(p);
        for (Elem t = 0; t < p; ++t) out[t] = pairs[t].y;
        return out;
    }
    std::optional<UniPoly> match;
    int matches = 0;
    for (auto& q : sudan_list_decode(f, std::move(pairs), d, a)) {
        bool ok = true;
        for (std::size_t i = 0; i < ref_t.size() && ok; ++i) ok = q.eval(ref_t[i]) == ref_values[ref_t[i]];
        if (ok) {
            ++matches;
            match = std::move(q);
        }
    }
    if (matches != 1) {
        if (stats && matches > 1) ++stats->ambiguous;
        return fail();
    }
    EvalTable out(p);
    for (Elem t = 0; t < p; ++t) out[t] = match->eval(t);
    return out;
}

std::vector<Elem> curve_agreement_set(const Curve& c1, const Matrix& a1, const Curve& c2, const Matrix& a2) {
    const Field* f = a1.field();
    std::vector<Elem> out;
    for (Elem t = 0; t < f->size(); ++t)
        if (a1.apply(c1.eval(t)) == a2.apply(c2.eval(t))) out.push_back(t);
    return out;
}

GoodCurves sample_good_curves(const Matrix& a, const SuParams& params, RandomStream& rng) {
    params.validate();
    const Field* f = params.field.get();
    const int m = params.m, r = params.r, v = params.v();
    const Point zero(m, 0);
    for (int attempt = 0; attempt < params.curve_retries; ++attempt) {
        Curve c1 = Curve::random(f, m, v, rng);
        if (c1.eval(1) == zero) continue;
        // Disjoint random point sets R_0..R_m of size r each.
        std::vector<Elem> pool(f->size());
        for (Elem t = 0; t < f->size(); ++t) pool[t] = t;
        for (std::size_t i = 0; i + 1 < pool.size(); ++i)
            std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
        std::vector<std::vector<Elem>> sets(m + 1);
        for (int j = 0; j <= m; ++j) sets[j].assign(pool.begin() + j * r, pool.begin() + (j + 1) * r);
        std::vector<Matrix> strides;
        for (int j = 0; j < m; ++j) strides.push_back(a.pow(1ULL << (f->k() * j)));
        std::vector<Elem> xs;
        std::vector<std::vector<Elem>> ys(m);
        for (int j = 0; j <= m; ++j)
            for (Elem t : sets[j]) {
                xs.push_back(t);
                const Point target = j < m ? strides[j].apply(c1.eval(t)) : c1.eval(t);
                for (int c = 0; c < m; ++c) ys[c].push_back(target[c]);
            }
        std::vector<UniPoly> coords;
        for (int c = 0; c < m; ++c) coords.push_back(UniPoly::interpolate(f, xs, ys[c]));
        GoodCurves g;
        g.c1 = std::move(c1);
        g.c2 = Curve(std::move(coords));
        const Matrix id = Matrix::identity(f, m);
        for (int j = 0; j < m; ++j) g.stride_refs.push_back(curve_agreement_set(g.c1, strides[j], g.c2, id));
        g.same_refs = curve_agreement_set(g.c1, id, g.c2, id);
        g.planted_sets = std::move(sets);
        return g;
    }
    throw ConstructionError("curve sampling exhausted its retries");
}

namespace {
std::uint64_t memo_key(int l, std::uint64_t e) { return (static_cast<std::uint64_t>(l) << 56) | e; }
}  // namespace

OrbitCircuit::OrbitCircuit(PointOracle p, Matrix a, SuParams params, GoodCurves curves, PredictorSet preds)
    : a_(std::move(a)), params_(std::move(params)), curves_(std::move(curves)), preds_(std::move(preds)) {
    const Field* f = params_.field.get();
    const int m = params_.m, M = params_.M;
    if (static_cast<int>(preds_.size()) != m) throw UsageError("need one predictor per stride");
    for (const auto& pr : preds_) need_points_ |= pr->needs_point();
    v_ = curves_.c1.eval(1);
    for (Elem t = 0; t < f->size(); ++t) {
        c1_points_.push_back(curves_.c1.eval(t));
        c2_points_.push_back(curves_.c2.eval(t));
    }
    p_pow_.assign(m + 1, 1);
    for (int j = 1; j <= m; ++j) p_pow_[j] = p_pow_[j - 1] * f->size();
    // Hardwired tables P(A^k C1), P(A^k C2), k = 0..M-1.
    std::vector<Point> x1 = c1_points_, x2 = c2_points_;
    Point tmp(m);
    for (int k = 0; k < M; ++k) {
        Entry e;
        e.ok = true;
        for (Elem t = 0; t < f->size(); ++t) {
            e.c1.push_back(p(x1[t]));
            e.c2.push_back(p(x2[t]));
            queries_ += 2;
            a_.apply_into(x1[t].data(), tmp.data());
            x1[t] = tmp;
            a_.apply_into(x2[t].data(), tmp.data());
            x2[t] = tmp;
        }
        hardwired_.push_back(std::move(e));
    }
}

const OrbitCircuit::Entry& OrbitCircuit::get(int l, std::uint64_t e) const {
    const std::uint64_t pl = p_pow_[l];
    const std::uint64_t k = e / pl;
    const int M = params_.M;
    if (k < static_cast<std::uint64_t>(M)) {
        if (l == 0) return hardwired_[k];
        return get(l - 1, e);
    }
    const auto key = memo_key(l, e);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Make sure all predecessors exist before taking references into the map.
    for (int kk = 1; kk < M; ++kk) get(l, e - kk * pl);
    std::vector<const Entry*> prev(M - 1);
    bool ok = true;
    for (int kk = 1; kk < M; ++kk) {
        prev[kk - 1] = &get(l, e - kk * pl);
        ok &= prev[kk - 1]->ok;
    }
    Entry out;
    if (ok) {
        const Field* f = params_.field.get();
        if (need_points_) {
            const Matrix ae = a_.pow(e);
            pts1_.resize(f->size(), Point(params_.m));
            pts2_.resize(f->size(), Point(params_.m));
            for (Elem t = 0; t < f->size(); ++t) {
                ae.apply_into(c1_points_[t].data(), pts1_[t].data());
                ae.apply_into(c2_points_[t].data(), pts2_[t].data());
            }
        }
        const auto& pred = *preds_[l];
        std::vector<const EvalTable*> in1(M - 1), in2(M - 1);
        for (int kk = 0; kk < M - 1; ++kk) {
            in1[kk] = &prev[kk]->c1;
            in2[kk] = &prev[kk]->c2;
        }
        // A^e C1 against the already known A^(e - p^l) C2 on the stride-l agreement set.
        auto c1 = learn_next_curve(pred, l, in1, need_points_ ? &pts1_ : nullptr, curves_.stride_refs[l],
                                   prev[0]->c2, params_, &stats_);
        if (c1) {
            auto c2 = learn_next_curve(pred, l, in2, need_points_ ? &pts2_ : nullptr, curves_.same_refs, *c1,
                                       params_, &stats_);
            if (c2) {
                out.ok = true;
                out.c1 = std::move(*c1);
                out.c2 = std::move(*c2);
            }
        }
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

std::optional<Elem> OrbitCircuit::eval(std::uint64_t i) const {
    const Entry& e = get(params_.m - 1, i);
    if (!e.ok) return std::nullopt;
    return e.c1[1];
}

std::optional<RsuResult> rsu_reconstruct(const PointOracle& p, const Matrix& a, const SuParams& params,
                                         const PredictorSet& preds, RandomStream& rng) {
    GoodCurves curves;
    try {
        curves = sample_good_curves(a, params, rng);
    } catch (const ConstructionError&) {
        return std::nullopt;
    }
    auto circuit = std::make_shared<OrbitCircuit>(p, a, params, std::move(curves), preds);
    return RsuResult{circuit->v(), circuit};
}

}  // namespace pdc
