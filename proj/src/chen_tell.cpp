#include "pdc/chen_tell.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "pdc/errors.hpp"

namespace pdc {

LayeredCircuit::LayeredCircuit(int width_, int depth_, int n_in_, int n_out_)
    : width(width_), depth(depth_), n_in(n_in_), n_out(n_out_),
      feeds(depth_, std::vector<std::array<int, 2>>(width_, {-1, -1})) {
    if (width < 1 || depth < 1 || n_in < 1 || n_out < 1 || n_in > width || n_out > width)
        throw UsageError("layered circuit dimensions out of range");
}

LayeredCircuit LayeredCircuit::random(int width, int depth, int n_in, int n_out, RandomStream& rng) {
    LayeredCircuit c(width, depth, n_in, n_out);
    for (int i = 1; i <= depth; ++i) {
        const int below = i == 1 ? n_in : width;
        for (int w = 0; w < width; ++w)
            c.set_gate(i, w, static_cast<int>(rng.below(below)), static_cast<int>(rng.below(below)));
    }
    return c;
}

LayeredCircuit LayeredCircuit::passthrough(int n, int depth) {
    if (depth < 2 || depth % 2 != 0) throw UsageError("passthrough depth must be even and positive");
    LayeredCircuit c(n, depth, n, n);
    for (int i = 1; i <= depth; ++i)
        for (int w = 0; w < n; ++w) c.set_gate(i, w, w, w);
    return c;
}

void LayeredCircuit::set_gate(int layer, int w, int u, int v) {
    if (layer < 1 || layer > depth || w < 0 || w >= width || u < 0 || u >= width || v < 0 || v >= width)
        throw UsageError("gate out of range");
    feeds[layer - 1][w] = {u, v};
}

bool LayeredCircuit::wire(int layer, int w, int u, int v) const {
    if (layer < 1 || layer > depth || w < 0 || w >= width) return false;
    const auto& g = feeds[layer - 1][w];
    return g[0] == u && g[1] == v;
}

void LayeredCircuit::validate() const {
    if (static_cast<int>(feeds.size()) != depth) throw ConsistencyError("layer count mismatch");
    for (const auto& layer : feeds) {
        if (static_cast<int>(layer.size()) != width) throw ConsistencyError("layer width mismatch");
        for (const auto& g : layer) {
            if (g[0] < 0 && g[1] < 0) continue;
            if (g[0] < 0 || g[1] < 0 || g[0] >= width || g[1] >= width) throw ConsistencyError("bad gate input");
        }
    }
}

std::vector<std::vector<int>> LayeredCircuit::layer_values(const BitString& input) const {
    if (static_cast<int>(input.size()) != n_in) throw UsageError("input length must equal n_in");
    std::vector<std::vector<int>> val(depth + 1, std::vector<int>(width, 0));
    for (int g = 0; g < n_in; ++g) val[0][g] = input.get(g);
    for (int i = 1; i <= depth; ++i)
        for (int w = 0; w < width; ++w) {
            const auto& g = feeds[i - 1][w];
            if (g[0] >= 0) val[i][w] = 1 - val[i - 1][g[0]] * val[i - 1][g[1]];
        }
    return val;
}

BitString LayeredCircuit::evaluate(const BitString& input) const {
    const auto val = layer_values(input);
    BitString out(n_out);
    for (int g = 0; g < n_out; ++g) out.set(g, val[depth][g] != 0);
    return out;
}

void LayeredCircuit::write(std::ostream& os) const {
    os << width << ' ' << depth << ' ' << n_in << ' ' << n_out << '\n';
    for (int i = 1; i <= depth; ++i)
        for (int w = 0; w < width; ++w) {
            const auto& g = feeds[i - 1][w];
            if (g[0] >= 0) os << i << ' ' << w << ' ' << g[0] << ' ' << g[1] << '\n';
        }
}

LayeredCircuit LayeredCircuit::read(std::istream& is) {
    int width, depth, n_in, n_out;
    if (!(is >> width >> depth >> n_in >> n_out)) throw UsageError("circuit header missing");
    LayeredCircuit c(width, depth, n_in, n_out);
    int i, w, u, v;
    while (is >> i >> w >> u >> v) c.set_gate(i, w, u, v);
    if (!is.eof()) throw UsageError("malformed wire line");
    return c;
}

PolyLadder::PolyLadder(FieldPtr f, int h, int m, LayeredCircuit circuit, BitString input)
    : f_(std::move(f)), h_(h), m_(m), c_(std::move(circuit)), input_(std::move(input)) {
    if (h_ < 2 || static_cast<std::uint32_t>(h_) > f_->size() || m_ < 1) throw UsageError("ladder needs 2 <= h <= p");
    c_.validate();
    std::uint64_t cells = 1;
    for (int j = 0; j < m_; ++j) cells *= h_;
    if (cells < static_cast<std::uint64_t>(c_.width)) throw UsageError("h^m must cover the circuit width");
    if (static_cast<int>(input_.size()) != c_.n_in) throw UsageError("input length must equal n_in");
    denom_inv_.resize(h_);
    for (int a = 0; a < h_; ++a) {
        Elem d = 1;
        for (int b = 0; b < h_; ++b)
            if (b != a) d = f_->mul(d, f_->add(a, b));
        denom_inv_[a] = f_->inv(d);
    }
    tables_.resize(d_prime() + 1);
}

std::pair<int, int> PolyLadder::stage(int idx) const {
    if (idx < 1 || idx > d_prime()) throw UsageError("ladder index out of range");
    if (idx == 1) return {0, 0};
    return {(idx - 2) / (2 * m_ + 1) + 1, (idx - 2) % (2 * m_ + 1)};
}

Point PolyLadder::id(int g) const {
    Point z(m_);
    for (int j = 0; j < m_; ++j) {
        z[j] = static_cast<Elem>(g % h_);
        g /= h_;
    }
    return z;
}

void PolyLadder::lagrange(Elem x, Elem* lag) const {
    if (x < static_cast<Elem>(h_)) {
        for (int a = 0; a < h_; ++a) lag[a] = a == static_cast<int>(x);
        return;
    }
    Elem all = 1;
    for (int b = 0; b < h_; ++b) all = f_->mul(all, f_->add(x, b));
    for (int a = 0; a < h_; ++a) lag[a] = f_->mul(f_->div(all, f_->add(x, a)), denom_inv_[a]);
}

Elem PolyLadder::delta_product(const Elem* lag, int g) const {
    Elem out = 1;
    for (int j = 0; j < m_ && out; ++j) {
        out = f_->mul(out, lag[j * h_ + g % h_]);
        g /= h_;
    }
    return out;
}

Elem PolyLadder::base_eval(const Point& w) const {
    if (static_cast<int>(w.size()) != arity()) throw UsageError("ladder points have 3m coordinates");
    std::vector<Elem> lag(m_ * h_);
    for (int j = 0; j < m_; ++j) lagrange(w[j], &lag[j * h_]);
    Elem out = 0;
    for (int g = 0; g < c_.n_in; ++g)
        if (input_.get(g)) out = f_->add(out, delta_product(lag.data(), g));
    return out;
}

Elem PolyLadder::phi_hat(int layer, const Point& wuv) const {
    if (layer < 1 || layer > c_.depth) throw UsageError("phi_hat layer out of range");
    if (static_cast<int>(wuv.size()) != arity()) throw UsageError("ladder points have 3m coordinates");
    std::vector<Elem> lag(3 * m_ * h_);
    for (int j = 0; j < 3 * m_; ++j) lagrange(wuv[j], &lag[j * h_]);
    const Elem* lw = lag.data();
    const Elem* lu = lw + m_ * h_;
    const Elem* lv = lu + m_ * h_;
    Elem out = 0;
    const auto& gates = c_.feeds[layer - 1];
    for (int w = 0; w < c_.width; ++w) {
        if (gates[w][0] < 0) continue;
        Elem t = delta_product(lw, w);
        if (t) t = f_->mul(t, delta_product(lu, gates[w][0]));
        if (t) t = f_->mul(t, delta_product(lv, gates[w][1]));
        out = f_->add(out, t);
    }
    return out;
}

Elem PolyLadder::dsr_eval(int idx, const Point& w, const PointOracle& prev) const {
    if (idx < 2) throw UsageError("dsr_eval needs idx >= 2");
    if (static_cast<int>(w.size()) != arity()) throw UsageError("ladder points have 3m coordinates");
    const auto [i, j] = stage(idx);
    const int n = arity();
    Point q(n, 0);
    if (j == 0) {
        std::copy(w.begin() + m_, w.begin() + 2 * m_, q.begin());
        const Elem a = prev(q);
        std::copy(w.begin() + 2 * m_, w.end(), q.begin());
        const Elem b = prev(q);
        const Elem phi = phi_hat(i, w);
        return phi ? f_->mul(phi, f_->add(1, f_->mul(a, b))) : 0;
    }
    const int pos = n - j;
    std::copy(w.begin(), w.begin() + pos, q.begin());
    Elem out = 0;
    for (int s = 0; s < h_; ++s) {
        q[pos] = static_cast<Elem>(s);
        out = f_->add(out, prev(q));
    }
    return out;
}

Elem PolyLadder::chain_eval(int idx, const Point& w) const {
    if (idx == 1) return base_eval(w);
    return dsr_eval(idx, w, [this, idx](const Point& x) { return chain_eval(idx - 1, x); });
}

int PolyLadder::faithful_output(int g, const PointOracle& top) const {
    if (g < 0 || g >= c_.n_out) throw UsageError("output index out of range");
    Point q(arity(), 0);
    const Point z = id(g);
    std::copy(z.begin(), z.end(), q.begin());
    const Elem v = top(q);
    if (v > 1) throw ConsistencyError("top polynomial is not Boolean at an output");
    return static_cast<int>(v);
}

std::shared_ptr<const TruthTable> PolyLadder::table(int idx) const {
    stage(idx);
    if (tables_[idx]) return tables_[idx];
    point_count(*f_, arity());
    if (idx == 1) {
        tables_[idx] = std::make_shared<const TruthTable>(
            TruthTable::tabulate(f_, arity(), degree(), [this](const Point& x) { return base_eval(x); }));
    } else {
        auto prev = table(idx - 1);
        const PointOracle po = [&prev](const Point& x) { return prev->eval(x); };
        tables_[idx] = std::make_shared<const TruthTable>(TruthTable::tabulate(
            f_, arity(), degree(), [this, idx, &po](const Point& x) { return dsr_eval(idx, x, po); }));
    }
    return tables_[idx];
}

int line_degree(const PointOracle& p, const Field& f, const Point& a, const Point& b) {
    std::vector<Elem> xs(f.size()), ys(f.size());
    Point x(a.size());
    for (Elem t = 0; t < f.size(); ++t) {
        for (std::size_t j = 0; j < a.size(); ++j) x[j] = f.add(a[j], f.mul(t, b[j]));
        xs[t] = t;
        ys[t] = p(x);
    }
    return UniPoly::interpolate(&f, xs, ys).degree();
}

CtParams CtParams::toy(FieldPtr f, int h, int m, int M) {
    CtParams c;
    c.field = f;
    c.h = h;
    c.m = m;
    SuParams& su = c.recon.su;
    su.field = f;
    su.m = 3 * m;
    su.M = M;
    su.delta = 5 * m * (h - 1);
    su.r = 1;
    su.list_size = static_cast<int>(f->size());
    su.predictor_reps = 3 * M;
    su.hadamard_gamma = 0.875;
    // Each inverter call decodes over 2^(3m log p) positions.
    c.recon.dlcorr_samples = 4;
    c.recon.dlcorr_runs = 2;
    return c;
}

std::vector<std::string> CtParams::regime_violations(const LayeredCircuit& c) const {
    std::vector<std::string> out;
    const long double t = static_cast<long double>(c.width) * c.depth;
    const long double p = field->size();
    const long double h27 = std::pow(static_cast<long double>(h), 27);
    if (std::log2(t) > h) out.push_back("log T > h");
    if (h >= p) out.push_back("h >= p");
    if (p > h27) out.push_back("p > h^27");
    if (h27 > t) out.push_back("h^27 > T");
    return out;
}

void CtParams::validate(const LayeredCircuit& c) const {
    if (!field) throw UsageError("CT parameters need a field");
    if (h < 2 || static_cast<std::uint32_t>(h) > field->size() || m < 1 || c1 < 1)
        throw UsageError("CT parameters out of range");
    if (recon.su.m != 3 * m || recon.su.delta != 5 * m * (h - 1) || !recon.su.field->same(*field))
        throw UsageError("recon parameters must match the ladder");
    if (3 * recon.su.delta >= static_cast<int>(field->size()))
        throw PreconditionError("self-correction needs degree below p/3");
    std::uint64_t cells = 1;
    for (int j = 0; j < m; ++j) cells *= h;
    if (cells < static_cast<std::uint64_t>(c.width)) throw UsageError("h^m must cover the circuit width");
    recon.su.validate();
}

HittingSet ct_generate(const PolyLadder& ladder, const CtParams& params) {
    params.validate(ladder.circuit());
    const auto cands = build_candidate_set(params.field, ladder.arity());
    std::vector<HittingSet> parts;
    for (int idx = 1; idx <= ladder.d_prime(); ++idx) {
        auto t = ladder.table(idx);
        parts.push_back(modified_generate([t](const Point& x) { return t->eval(x); }, params.recon.su, cands));
    }
    return HittingSet::union_of(parts);
}

namespace {

// P~_idx evaluated through dsr on the previous layer's circuit, memoized.
struct LayerMemo {
    const PolyLadder* ladder;
    int idx;
    PointOracle prev;
    std::vector<Elem> memo;  // kUnset until computed

    static constexpr Elem kUnset = ~Elem{0};

    Elem operator()(const Point& x) {
        Elem& v = memo[lex_index(*ladder->field(), x)];
        if (v == kUnset) v = ladder->dsr_eval(idx, x, prev);
        return v;
    }
};

}  // namespace

CtOutcome ct_reconstruct(const PolyLadder& ladder, const LayerOracles& oracles, const CtParams& params,
                         RandomStream rng) {
    params.validate(ladder.circuit());
    const Field* f = params.field.get();
    const int n = ladder.arity();
    const auto cands = build_candidate_set(params.field, n);
    CtOutcome out;
    PointOracle prev = [&ladder](const Point& x) { return ladder.base_eval(x); };
    for (int idx = 2; idx <= ladder.d_prime(); ++idx) {
        CtLayerLog log;
        log.index = idx;
        auto memo = std::make_shared<LayerMemo>(
            LayerMemo{&ladder, idx, prev, std::vector<Elem>(point_count(*f, n), LayerMemo::kUnset)});
        PointOracle layer = [memo](const Point& x) { return (*memo)(x); };
        auto orc = oracles(idx, layer);
        RandomStream lr = rng.split(idx);
        auto rec = modified_reconstruct(layer, *orc, cands, params.recon, lr.split(1));
        log.reconstructed = rec.circuit != nullptr;
        if (!rec.circuit) {
            out.layers.push_back(log);
            return out;
        }
        log.candidate = rec.circuit->candidate_index();
        RandomStream vr = lr.split(2);
        Point x(n);
        bool ok = true;
        for (int s = 0; s < params.samples() && ok; ++s) {
            for (auto& c : x) c = static_cast<Elem>(vr.below(f->size()));
            ok = rec.circuit->eval(x) == layer(x);
        }
        log.verified = ok;
        out.layers.push_back(log);
        if (!ok) return out;
        prev = [c = rec.circuit](const Point& y) { return c->eval(y); };
    }
    const auto& c = ladder.circuit();
    BitString bits(c.n_out);
    try {
        for (int g = 0; g < c.n_out; ++g) bits.set(g, ladder.faithful_output(g, prev) != 0);
    } catch (const ConsistencyError&) {
        return out;
    }
    out.output = bits;
    return out;
}

CtOutcome ct_reconstruct(const PolyLadder& ladder, const Distinguisher& d, const CtParams& params, RandomStream rng) {
    return ct_reconstruct(
        ladder, [&d](int, const PointOracle&) { return std::make_unique<DistinguisherOracles>(d); }, params, rng);
}

}  // namespace pdc
