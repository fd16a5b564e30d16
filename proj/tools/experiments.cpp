#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "pdc/bootstrap.hpp"
#include "pdc/chen_tell.hpp"
#include "pdc/errors.hpp"
#include "pdc/su_modified.hpp"

namespace pdc::tools {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

FieldPtr field_for(std::uint32_t p) {
    if (p < 2 || (p & (p - 1)) != 0 || p > (1u << 24)) throw UsageError("--p must be a power of two in [2, 2^24]");
    return Field::make(__builtin_ctz(p));
}

Json params_json(const ExpOptions& o) {
    Json j;
    j["command"] = o.command;
    auto put = [&j](const char* k, const auto& v) {
        if (v) j[k] = *v; else j[k] = nullptr;
    };
    put("p", o.p);
    put("m", o.m);
    put("M", o.M);
    put("delta", o.delta);
    put("rho", o.rho);
    put("trials", o.trials);
    put("h", o.h);
    put("bits", o.bits);
    j["seed"] = o.seed;
    j["regime"] = o.regime;
    j["cap_bytes"] = o.cap_bytes;
    j["oracle"] = o.oracle;
    j["property"] = o.property;
    j["circuit_file"] = o.circuit_file;
    j["input"] = o.input;
    j["modified"] = o.modified;
    j["stream"] = o.stream;
    return j;
}

Json new_report(const ExpOptions& o) {
    Json r;
    r["experiment"] = o.command;
    r["regime"] = o.regime;
    r["seed"] = o.seed;
    r["parameters"] = params_json(o);
    return r;
}

std::uint64_t fold(std::uint64_t acc, const BitString& z) {
    acc = mix64(acc ^ z.size());
    for (auto w : z.words()) acc = mix64(acc ^ w);
    return acc;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Streams h (when asked) and returns a digest of every string; the cap applies either way.
std::uint64_t stream_set(const HittingSet& h, std::uint64_t cap_bytes, std::ostream* os) {
    const std::uint64_t bytes = (h.length() + 7) / 8;
    if (h.count() > cap_bytes / std::max<std::uint64_t>(bytes, 1))
        throw ResourceError("hitting set of " + std::to_string(h.count()) + " strings exceeds --cap-bytes");
    std::uint64_t acc = 0;
    for (std::uint64_t i = 0; i < h.count(); ++i) {
        const BitString z = h.at(i);
        acc = fold(acc, z);
        if (os) *os << z.hex() << '\n';
    }
    return acc;
}

// ---- field-selftest ----

ExpResult field_selftest(const ExpOptions& o) {
    const auto t0 = Clock::now();
    Json rep = new_report(o);
    const int trials = o.trials.value_or(10000);
    std::vector<int> ks;
    if (o.p) ks.push_back(field_for(*o.p)->k());
    else
        for (int k = 1; k <= 16; ++k) ks.push_back(k);
    RandomStream master(o.seed);
    long total_fail = 0;
    Json fields = Json::array();
    for (int k : ks) {
        auto f = Field::make(k);
        RandomStream rng = master.split(k);
        std::map<std::string, long> fail;
        auto check = [&fail](const char* name, bool ok) {
            fail[name] += !ok;
        };
        const auto q = f->size();
        for (int t = 0; t < trials; ++t) {
            const Elem a = static_cast<Elem>(rng.below(q)), b = static_cast<Elem>(rng.below(q)),
                       c = static_cast<Elem>(rng.below(q));
            check("add_commutative", f->add(a, b) == f->add(b, a));
            check("add_associative", f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
            check("mul_commutative", f->mul(a, b) == f->mul(b, a));
            check("mul_associative", f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
            check("distributive", f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
            check("identities", f->add(a, 0) == a && f->mul(a, 1) == a && f->mul(a, 0) == 0);
            check("additive_inverse", f->add(a, a) == 0);
            check("encoding_roundtrip", f->from_bits(f->to_bits(a)) == a);
            if (a != 0) {
                check("multiplicative_inverse", f->mul(a, f->inv(a)) == 1);
                check("fermat", f->pow(a, q - 1) == 1);
            }
        }
        Json fj;
        fj["k"] = k;
        fj["p"] = q;
        fj["modulus"] = hex64(f->modulus());
        fj["nice"] = f->nice();
        const bool irr = gf2_irreducible((1ULL << k) | f->modulus());
        fj["modulus_irreducible"] = irr;
        long nf = !irr;
        Json fl;
        for (auto& [name, n] : fail) {
            fl[name] = n;
            nf += n;
        }
        fj["failures"] = fl;
        fj["total_failures"] = nf;
        total_fail += nf;
        fields.push_back(fj);
    }
    Json nice = Json::array();
    for (int k : {2, 6, 18}) {
        const std::uint64_t poly = (1ULL << k) | (1ULL << (k / 2)) | 1;
        const bool irr = gf2_irreducible(poly);
        nice.push_back({{"k", k}, {"polynomial", hex64(poly)}, {"irreducible", irr}});
        total_fail += !irr;
    }
    rep["trials_per_field"] = trials;
    rep["fields"] = fields;
    rep["nice_moduli"] = nice;
    rep["aggregate"] = {{"total_failures", total_fail}};
    rep["wall_clock"] = {{"total_seconds", seconds_since(t0)}};
    return {rep, total_fail == 0 ? 0 : 2};
}

// ---- sudan-bench ----

UniPoly random_poly(const Field* f, int d, RandomStream& rng) {
    std::vector<Elem> c(d + 1);
    for (auto& x : c) x = static_cast<Elem>(rng.below(f->size()));
    return UniPoly(f, c);
}

void dedupe(std::vector<Pair>& pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

ExpResult sudan_bench(const ExpOptions& o) {
    const auto t0 = Clock::now();
    Json rep = new_report(o);
    auto f = field_for(o.p.value_or(8));
    const int dmax = o.delta.value_or(2);
    const int trials = o.trials.value_or(500);
    if (dmax < 1) throw UsageError("--delta must be at least 1");
    const double brute_cost = std::pow(static_cast<double>(f->size()), dmax + 1);
    if (brute_cost > (1 << 24)) throw UsageError("brute-force oracle limited to p^(delta+1) <= 2^24");
    RandomStream master(o.seed);
    long mismatches = 0, bound_violations = 0, nonempty = 0;
    double t_fast = 0, t_brute = 0;
    Json rows = Json::array();
    for (int t = 0; t < trials; ++t) {
        RandomStream rng = master.split(t);
        const int d = 1 + static_cast<int>(rng.below(dmax));
        const int k = 1 + static_cast<int>(rng.below(3));
        std::vector<Pair> pairs;
        for (int i = 0; i < k; ++i) {
            auto q = random_poly(f.get(), d, rng);
            for (Elem x = 0; x < f->size(); ++x) pairs.push_back({x, q.eval(x)});
        }
        const int noise = static_cast<int>(rng.below(10));
        for (int i = 0; i < noise; ++i)
            pairs.push_back({static_cast<Elem>(rng.below(f->size())), static_cast<Elem>(rng.below(f->size()))});
        dedupe(pairs);
        const int a = sudan_min_agreement(d, pairs.size()) + static_cast<int>(rng.below(3));
        auto s0 = Clock::now();
        auto fast = sudan_list_decode(f.get(), pairs, d, a);
        auto interp = sudan_interpolation_decode(f.get(), pairs, d, a);
        t_fast += seconds_since(s0);
        s0 = Clock::now();
        auto brute = brute_force_list_decode(f.get(), pairs, d, a);
        t_brute += seconds_since(s0);
        const bool match = fast == brute && interp == brute;
        const bool bound = fast.size() <= 2.0 * pairs.size() / a;
        mismatches += !match;
        bound_violations += !bound;
        nonempty += !fast.empty();
        rows.push_back({{"d", d}, {"b", pairs.size()}, {"a", a}, {"list_size", fast.size()}, {"match", match}});
    }
    // every line as a full table, alone and together with one more line
    long line_instances = 0;
    RandomStream lr = master.split(1u << 20);
    const Elem p = f->size();
    for (Elem c0 = 0; c0 < p; ++c0)
        for (Elem c1 = 0; c1 < p; ++c1) {
            UniPoly q(f.get(), {c0, c1});
            auto other = random_poly(f.get(), 1, lr);
            for (int extra = 0; extra < 2; ++extra) {
                std::vector<Pair> pairs;
                for (Elem x = 0; x < p; ++x) pairs.push_back({x, q.eval(x)});
                if (extra)
                    for (Elem x = 0; x < p; ++x) pairs.push_back({x, other.eval(x)});
                dedupe(pairs);
                const int a = sudan_min_agreement(1, pairs.size());
                if (a > static_cast<int>(p)) continue;
                auto fast = sudan_list_decode(f.get(), pairs, 1, a);
                auto brute = brute_force_list_decode(f.get(), pairs, 1, a);
                mismatches += fast != brute;
                bound_violations += fast.size() > 2.0 * pairs.size() / a;
                ++line_instances;
            }
        }
    rep["trials"] = rows;
    rep["aggregate"] = {{"random_instances", trials},
                        {"line_instances", line_instances},
                        {"nonempty_lists", nonempty},
                        {"mismatches", mismatches},
                        {"list_bound_violations", bound_violations}};
    rep["wall_clock"] = {{"total_seconds", seconds_since(t0)}, {"sudan_seconds", t_fast}, {"brute_seconds", t_brute}};
    return {rep, mismatches == 0 && bound_violations == 0 ? 0 : 2};
}

// ---- SU helpers ----

ModifiedParams su_params(const ExpOptions& o, FieldPtr f, int m, int M, int delta, Json& rep) {
    ModifiedParams mp;
    if (o.regime == "paper") {
        mp.su = SuParams::defaults(f, m, M, delta);
    } else if (o.regime == "relaxed") {
        mp.su.field = f;
        mp.su.m = m;
        mp.su.M = M;
        mp.su.delta = delta;
        mp.su.r = 1;
        mp.su.list_size = static_cast<int>(f->size());
        mp.su.predictor_reps = 3 * M;
        mp.su.hadamard_gamma = 0.875;
    } else {
        throw UsageError("--regime must be paper or relaxed");
    }
    rep["su_params"] = {{"r", mp.su.r},
                        {"v", mp.su.v()},
                        {"lnc_degree", mp.su.lnc_degree()},
                        {"list_size", mp.su.list_size},
                        {"predictor_reps", mp.su.predictor_reps},
                        {"hadamard_gamma", mp.su.hadamard_gamma},
                        {"paper_regime_holds", mp.su.paper_regime()}};
    mp.su.validate();
    if (2 * mp.su.lnc_degree() >= static_cast<int>(f->size()))
        throw PreconditionError("Learn Next Curve needs delta * v < p / 2; use --regime relaxed or a larger p");
    return mp;
}

TruthTable random_table(FieldPtr f, int m, int delta, RandomStream rng) {
    auto poly = MultiPoly::random(f, m, delta, rng);
    return TruthTable::tabulate(f, m, delta, [&](const Point& x) { return poly.eval(x); });
}

std::size_t first_generator(const CandidateSet& c) {
    for (std::size_t i = 0; i < c.matrices.size(); ++i)
        if (c.generator[i]) return i;
    throw ConsistencyError("candidate set without a verified generator");
}

// ---- su-gen ----

ExpResult su_gen(const ExpOptions& o, std::ostream* os) {
    const auto t0 = Clock::now();
    Json rep = new_report(o);
    auto f = field_for(o.p.value_or(4));
    const int m = o.m.value_or(1), M = o.M.value_or(2), delta = o.delta.value_or(1);
    if (m < 1 || M < 2 || delta < 0) throw UsageError("need m >= 1, M >= 2, delta >= 0");
    point_count(*f, m + 1, 1ULL << 26);
    RandomStream master(o.seed);
    auto table = random_table(f, m, delta, master.split(0));
    auto cands = build_candidate_set(f, m);
    SuParams sp;
    sp.field = f;
    sp.m = m;
    sp.M = M;
    sp.delta = delta;
    HittingSet h;
    if (o.modified) {
        h = modified_generate(table.oracle(), sp, cands);
    } else {
        h = hsu_generate(table.oracle(), cands.matrices[first_generator(cands)], sp);
    }
    rep["generator"] = o.modified ? "modified" : "hsu";
    rep["candidates"] = cands.matrices.size();
    rep["count"] = h.count();
    rep["length"] = h.length();
    rep["digest"] = hex64(stream_set(h, o.cap_bytes, os));
    rep["wall_clock"] = {{"total_seconds", seconds_since(t0)}};
    return {rep, 0};
}

// ---- su-recon ----

ExpResult su_recon(const ExpOptions& o) {
    const auto t0 = Clock::now();
    Json rep = new_report(o);
    auto f = field_for(o.p.value_or(32));
    const int m = o.m.value_or(1), M = o.M.value_or(16), delta = o.delta.value_or(3);
    const int trials = o.trials.value_or(10);
    const std::string mode = o.oracle.empty() ? "avoider" : o.oracle;
    if (mode != "avoider" && mode != "planted" && mode != "random" && mode != "fixture")
        throw UsageError("su-recon --oracle must be avoider, planted, random or fixture");
    auto mp = su_params(o, f, m, M, delta, rep);
    const std::uint64_t points = point_count(*f, m, 1ULL << 20);
    auto cands = build_candidate_set(f, m);
    RandomStream master(o.seed);
    long exact = 0, wrong = 0, bottom = 0;
    Json rows = Json::array();
    for (int t = 0; t < trials; ++t) {
        RandomStream tr = master.split(t);
        auto table = random_table(f, m, delta, tr.split(0));
        PointOracle p = table.oracle();
        std::string outcome;
        Json row;
        if (mode == "fixture") {
            const std::size_t gi = first_generator(cands);
            const Matrix& a = cands.matrices[gi];
            RandomStream rr = tr.split(1);
            auto rsu = rsu_reconstruct(p, a, mp.su, planted_predictors(p, mp.su), rr);
            if (!rsu) {
                outcome = "bottom";
            } else {
                const std::uint64_t order = points - 1;
                long bad = 0, missing = 0;
                Point x = rsu->v;
                for (std::uint64_t i = 0; i < order; ++i) {
                    const auto c = rsu->circuit->eval(i);
                    if (!c) ++missing;
                    else if (*c != p(x)) ++bad;
                    x = a.apply(x);
                }
                row["indices_checked"] = order;
                row["missing"] = missing;
                outcome = bad ? "wrong" : (missing ? "bottom" : "exact");
            }
        } else {
            std::unique_ptr<ReconOracles> oracles;
            if (mode == "planted") {
                oracles = std::make_unique<PlantedOracles>(p);
            } else if (mode == "avoider") {
                auto d = complement_distinguisher(modified_generate(p, mp.su, cands), o.cap_bytes);
                oracles = std::make_unique<DistinguisherOracles>(d);
            } else if (t % 2 == 0) {
                row["adversary"] = "random-hash";
                const std::uint64_t key = tr.split(2).next();
                Distinguisher d{static_cast<std::size_t>(M),
                                [key](const BitString& z) { return (mix64(z.word() ^ key) & 1) != 0; }};
                oracles = std::make_unique<DistinguisherOracles>(d);
            } else {
                // avoids the generator of a different random polynomial
                row["adversary"] = "other-polynomial-avoider";
                auto other = random_table(f, m, delta, tr.split(4));
                auto d = complement_distinguisher(modified_generate(other.oracle(), mp.su, cands), o.cap_bytes);
                oracles = std::make_unique<DistinguisherOracles>(d);
            }
            auto out = modified_reconstruct(p, *oracles, cands, mp, tr.split(3));
            long rsu_ok = 0, anchored = 0, passed_close = 0;
            for (auto& c : out.candidates) {
                rsu_ok += c.rsu_ok;
                anchored += c.anchor_ok;
                passed_close += c.is_close;
            }
            row["candidates_rsu_ok"] = rsu_ok;
            row["candidates_anchored"] = anchored;
            row["candidates_close"] = passed_close;
            row["final_gate"] = out.gate_passed;
            if (!out.circuit) {
                outcome = "bottom";
            } else {
                long bad = 0;
                for (std::uint64_t i = 0; i < points; ++i) bad += out.circuit->eval(lex_point(*f, m, i)) != table.at(i);
                row["mismatched_points"] = bad;
                outcome = bad ? "wrong" : "exact";
            }
        }
        exact += outcome == "exact";
        wrong += outcome == "wrong";
        bottom += outcome == "bottom";
        row["trial"] = t;
        row["outcome"] = outcome;
        rows.push_back(row);
    }
    const bool completeness = mode != "random";
    rep["oracle"] = mode;
    rep["trials"] = rows;
    rep["aggregate"] = {{"exact", exact},
                        {"wrong", wrong},
                        {"bottom", bottom},
                        {"success_rate", trials ? static_cast<double>(exact) / trials : 0.0}};
    rep["wall_clock"] = {{"total_seconds", seconds_since(t0)}};
    const bool bad = wrong > 0 || (completeness && 2 * bottom >= trials && trials > 0);
    return {rep, bad ? 2 : 0};
}

// ---- Chen-Tell toy ----

struct CtSetup {
    FieldPtr f;
    int h, m, M;
    LayeredCircuit c;
    BitString in;
};

CtSetup ct_setup(const ExpOptions& o, Json& rep) {
    CtSetup s;
    s.f = field_for(o.p.value_or(32));
    s.h = o.h.value_or(2);
    s.m = o.m.value_or(1);
    s.M = o.M.value_or(2);
    if (!o.circuit_file.empty()) {
        std::ifstream is(o.circuit_file);
        if (!is) throw UsageError("cannot open circuit file " + o.circuit_file);
        s.c = LayeredCircuit::read(is);
    } else {
        s.c = LayeredCircuit(2, 1, 2, 2);
        s.c.set_gate(1, 0, 0, 1);
        s.c.set_gate(1, 1, 1, 1);
    }
    const std::string bits = o.input.empty() ? (o.circuit_file.empty() ? "01" : std::string(s.c.n_in, '0')) : o.input;
    if (static_cast<int>(bits.size()) != s.c.n_in) throw UsageError("--input length must equal the circuit's n_in");
    s.in = BitString::from_binary(bits);
    rep["circuit"] = {{"width", s.c.width}, {"depth", s.c.depth}, {"n_in", s.c.n_in}, {"n_out", s.c.n_out}};
    rep["input"] = bits;
    return s;
}

CtParams ct_params(const ExpOptions& o, const CtSetup& s, Json& rep) {
    auto params = CtParams::toy(s.f, s.h, s.m, s.M);
    const auto viol = params.regime_violations(s.c);
    rep["regime_violations"] = viol;
    if (o.regime == "paper" && !viol.empty())
        throw PreconditionError("paper regime violated: " + viol.front());
    if (o.regime != "paper" && o.regime != "relaxed") throw UsageError("--regime must be paper or relaxed");
    params.validate(s.c);
    return params;
}

ExpResult ct_gen(const ExpOptions& o, std::ostream* os) {
    const auto t0 = Clock::now();
    Json rep = new_report(o);
    auto s = ct_setup(o, rep);
    auto params = ct_params(o, s, rep);
    PolyLadder ladder(s.f, s.h, s.m, s.c, s.in);
    RandomStream rng = RandomStream(o.seed).split(1);
    Json layers = Json::array();
    long audit_fail = 0;
    for (int idx = 1; idx <= ladder.d_prime(); ++idx) {
        auto tb = ladder.table(idx);
        std::uint64_t dig = 0;
        for (auto v : tb->values()) dig = mix64(dig ^ v);
        int maxdeg = 0;
        for (int l = 0; l < 20; ++l) {
            Point a(ladder.arity()), b(ladder.arity());
            for (auto& c : a) c = static_cast<Elem>(rng.below(s.f->size()));
            for (auto& c : b) c = static_cast<Elem>(rng.below(s.f->size()));
            maxdeg = std::max(maxdeg, line_degree(tb->oracle(), *s.f, a, b));
        }
        audit_fail += maxdeg > ladder.degree();
        auto [i, j] = ladder.stage(idx);
        layers.push_back({{"index", idx}, {"layer", i}, {"stage", j}, {"max_line_degree", maxdeg}, {"digest", hex64(dig)}});
    }
    const BitString truth = s.c.evaluate(s.in);
    auto top = ladder.table(ladder.d_prime());
    std::string faithful;
    for (int g = 0; g < s.c.n_out; ++g) faithful += static_cast<char>('0' + ladder.faithful_output(g, top->oracle()));
    auto h = ct_generate(ladder, params);
    rep["d_prime"] = ladder.d_prime();
    rep["degree"] = ladder.degree();
    rep["layers"] = layers;
    rep["circuit_output"] = truth.binary();
    rep["faithful_output"] = faithful;
    rep["count"] = h.count();
    rep["length"] = h.length();
    if (o.stream) rep["digest"] = hex64(stream_set(h, o.cap_bytes, os));
    rep["wall_clock"] = {{"total_seconds", seconds_since(t0)}};
    return {rep, audit_fail == 0 && faithful == truth.binary() ? 0 : 2};
}

ExpResult ct_recon(const ExpOptions& o) {
    const auto t0 = Clock::now();
    Json rep = new_report(o);
    auto s = ct_setup(o, rep);
    auto params = ct_params(o, s, rep);
    const std::string mode = o.oracle.empty() ? "planted" : o.oracle;
    if (mode != "planted" && mode != "adversarial") throw UsageError("ct-recon --oracle must be planted or adversarial");
    const int trials = o.trials.value_or(10);
    PolyLadder ladder(s.f, s.h, s.m, s.c, s.in);
    for (int idx = 1; idx <= ladder.d_prime(); ++idx) ladder.table(idx);
    BitString other_in = s.in;
    for (std::size_t i = 0; i < other_in.size(); ++i) other_in.set(i, !other_in.get(i));
    std::unique_ptr<PolyLadder> other;
    if (mode == "adversarial") other = std::make_unique<PolyLadder>(s.f, s.h, s.m, s.c, other_in);
    const BitString truth = s.c.evaluate(s.in);
    RandomStream master(o.seed);
    long correct = 0, wrong = 0, bottom = 0;
    Json rows = Json::array();
    for (int t = 0; t < trials; ++t) {
        RandomStream tr = master.split(t);
        CtOutcome out;
        std::string adversary = "planted";
        if (mode == "planted") {
            auto planted = [](int, const PointOracle& layer) { return std::make_unique<PlantedOracles>(layer); };
            out = ct_reconstruct(ladder, planted, params, tr);
        } else if (t % 3 == 0) {
            adversary = "random-hash";
            const std::uint64_t key = tr.split(7).next();
            Distinguisher d{static_cast<std::size_t>(s.M),
                            [key](const BitString& z) { return (mix64(z.word() ^ key) & 1) != 0; }};
            out = ct_reconstruct(ladder, d, params, tr);
        } else if (t % 3 == 1) {
            adversary = "constant";
            Distinguisher d{static_cast<std::size_t>(s.M), [](const BitString&) { return true; }};
            out = ct_reconstruct(ladder, d, params, tr);
        } else {
            adversary = "other-input-ladder";
            auto wrong_layers = [&other](int idx, const PointOracle&) {
                return std::make_unique<PlantedOracles>(other->table(idx)->oracle());
            };
            out = ct_reconstruct(ladder, wrong_layers, params, tr);
        }
        std::string outcome = !out.output ? "bottom" : (*out.output == truth ? "correct" : "wrong");
        correct += outcome == "correct";
        wrong += outcome == "wrong";
        bottom += outcome == "bottom";
        long recon = 0;
        for (auto& l : out.layers) recon += l.verified;
        rows.push_back({{"trial", t},
                        {"adversary", adversary},
                        {"outcome", outcome},
                        {"output", out.output ? Json(out.output->binary()) : Json(nullptr)},
                        {"layers_verified", recon}});
    }
    rep["oracle"] = mode;
    rep["d_prime"] = ladder.d_prime();
    rep["circuit_output"] = truth.binary();
    rep["trials"] = rows;
    rep["aggregate"] = {{"correct", correct},
                        {"wrong", wrong},
                        {"bottom", bottom},
                        {"success_rate", trials ? static_cast<double>(correct) / trials : 0.0}};
    rep["wall_clock"] = {{"total_seconds", seconds_since(t0)}};
    const bool bad = wrong > 0 || (mode == "planted" && 2 * bottom >= trials && trials > 0);
    return {rep, bad ? 2 : 0};
}

// ---- bootstrap ----

std::unique_ptr<DenseProperty> make_property(const std::string& name, int rho) {
    if (name.empty() || name == "leading-bit") return std::make_unique<LeadingBitProperty>();
    if (name == "parity") return std::make_unique<ParityProperty>();
    if (name == "prime") return std::make_unique<PrimeProperty>();
    if (name.rfind("cmd:", 0) == 0) return std::make_unique<SubprocessProperty>(name.substr(4), rho);
    throw UsageError("--property must be leading-bit, parity, prime or cmd:<shell command>");
}

Json schedule_json(const Schedule& s) {
    Json ln = Json::array(), lt = Json::array(), ns = Json::array();
    for (auto v : s.log_n) ln.push_back(static_cast<double>(v));
    for (auto v : s.log_T) lt.push_back(static_cast<double>(v));
    for (int i = 0; i <= s.t + 1; ++i) {
        auto n = s.n_at(i);
        ns.push_back(n ? Json(*n) : Json(nullptr));
    }
    return {{"n0", s.n0}, {"alpha", s.alpha}, {"beta", s.beta}, {"c", s.c}, {"rho", s.rho},
            {"t", s.t},   {"log_n", ln},      {"log_T", lt},     {"n", ns}, {"t_within_log_n0", s.within_bound()}};
}

Json run_json(const BootstrapRun& r) {
    Json j = {{"case", case_name(r.kind)},
              {"level", r.level},
              {"output", r.output ? Json(r.output->hex()) : Json(nullptr)}};
    if (r.ct) {
        long v = 0;
        for (auto& l : r.ct->layers) v += l.verified;
        j["layers_verified"] = v;
    }
    return j;
}

ExpResult bootstrap_demo(const ExpOptions& o) {
    const auto t0 = Clock::now();
    Json rep = new_report(o);
    BootstrapConfig cfg;
    if (o.rho) cfg.rho = *o.rho;
    auto q = make_property(o.property, cfg.rho);
    Registry reg(cfg, *q);
    const std::uint64_t n = o.bits ? static_cast<std::uint64_t>(*o.bits) : static_cast<std::uint64_t>(cfg.n0);
    const int trials = o.trials.value_or(10);
    rep["property"] = q->name();
    rep["schedule"] = schedule_json(reg.schedule());
    if (!reg.schedule().within_bound()) throw ConsistencyError("schedule has t > log n0");
    const auto bf0 = reg.bf_value(0);
    rep["bf0"] = bf0 ? Json(bf0->hex()) : Json(nullptr);
    RandomStream master(o.seed);
    Json rows = Json::array();
    std::set<std::string> distinct;
    long non_bottom = 0, in_q = 0;
    for (int t = 0; t < trials; ++t) {
        auto run = algorithm_b(n, reg, *q, master.split(t));
        if (run.output) {
            ++non_bottom;
            distinct.insert(run.output->hex());
            in_q += q->contains(*run.output);
        }
        Json row = run_json(run);
        row["trial"] = t;
        rows.push_back(row);
    }
    rep["n"] = n;
    rep["trials"] = rows;
    rep["aggregate"] = {{"non_bottom", non_bottom},
                        {"distinct_outputs", distinct.size()},
                        {"all_in_Q", in_q == non_bottom},
                        {"pseudodeterministic", distinct.size() <= 1}};
    rep["wall_clock"] = {{"total_seconds", seconds_since(t0)}};
    const bool bad = distinct.size() > 1 || in_q != non_bottom || 2 * non_bottom <= trials;
    return {rep, bad ? 2 : 0};
}

std::optional<std::uint64_t> sieve_smallest(int bits) {
    const std::uint64_t lo = 1ULL << (bits - 1), hi = 1ULL << bits;
    std::vector<bool> comp(hi, false);
    for (std::uint64_t i = 2; i * i < hi; ++i)
        if (!comp[i])
            for (std::uint64_t j = i * i; j < hi; j += i) comp[j] = true;
    for (std::uint64_t v = std::max<std::uint64_t>(lo, 2); v < hi; ++v)
        if (!comp[v]) return v;
    return std::nullopt;
}

ExpResult prime_demo(const ExpOptions& o) {
    const auto t0 = Clock::now();
    Json rep = new_report(o);
    const int bits = o.bits.value_or(16);
    if (bits < 2 || bits > 24) throw UsageError("prime-demo supports 2 <= --bits <= 24");
    BootstrapConfig cfg;
    cfg.n0 = bits;
    cfg.alpha = 1;
    cfg.beta = 4;
    cfg.rho = o.rho.value_or(3);
    cfg.materialize_log2 = 24;
    if ((1ULL << bits) * ((bits + 7) / 8) > o.cap_bytes) throw ResourceError("{0,1}^bits exceeds --cap-bytes");
    PrimeProperty q;
    Registry reg(cfg, q);
    rep["schedule"] = schedule_json(reg.schedule());
    auto run = algorithm_b(bits, reg, q, RandomStream(o.seed));
    rep["run"] = run_json(run);
    const auto want = sieve_smallest(bits);
    rep["sieve_smallest_prime"] = want ? Json(*want) : Json(nullptr);
    if (run.output) rep["prime"] = run.output->big_endian_value();
    else rep["prime"] = nullptr;
    const bool match = run.output && want && run.output->big_endian_value() == *want;
    rep["matches_sieve"] = match;
    rep["wall_clock"] = {{"total_seconds", seconds_since(t0)}};
    return {rep, match ? 0 : 2};
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"field-selftest", "sudan-bench", "su-gen",         "su-recon",
                                                "ct-gen",         "ct-recon",    "bootstrap-demo", "prime-demo"};
    return names;
}

ExpResult run_experiment(const ExpOptions& o, std::ostream* stream) {
    std::ostream sink(nullptr);
    if (o.stream && !stream) stream = &sink;
    if (!o.stream) stream = nullptr;
    if (o.command == "field-selftest") return field_selftest(o);
    if (o.command == "sudan-bench") return sudan_bench(o);
    if (o.command == "su-gen") return su_gen(o, stream);
    if (o.command == "su-recon") return su_recon(o);
    if (o.command == "ct-gen") return ct_gen(o, stream);
    if (o.command == "ct-recon") return ct_recon(o);
    if (o.command == "bootstrap-demo") return bootstrap_demo(o);
    if (o.command == "prime-demo") return prime_demo(o);
    throw UsageError("unknown command " + o.command);
}

ExpOptions options_from_report(const Json& report) {
    const Json& j = report.at("parameters");
    ExpOptions o;
    o.command = j.at("command").get<std::string>();
    auto get = [&j](const char* k, auto& dst) {
        using T = typename std::decay_t<decltype(dst)>::value_type;
        if (j.contains(k) && !j.at(k).is_null()) dst = j.at(k).get<T>();
    };
    get("p", o.p);
    get("m", o.m);
    get("M", o.M);
    get("delta", o.delta);
    get("rho", o.rho);
    get("trials", o.trials);
    get("h", o.h);
    get("bits", o.bits);
    o.seed = j.at("seed").get<std::uint64_t>();
    o.regime = j.at("regime").get<std::string>();
    o.cap_bytes = j.at("cap_bytes").get<std::uint64_t>();
    o.oracle = j.at("oracle").get<std::string>();
    o.property = j.at("property").get<std::string>();
    o.circuit_file = j.at("circuit_file").get<std::string>();
    o.input = j.at("input").get<std::string>();
    o.modified = j.at("modified").get<bool>();
    o.stream = j.at("stream").get<bool>();
    return o;
}

std::string replay_key(const Json& report) {
    Json r = report;
    r.erase("wall_clock");
    return r.dump();
}

}  // namespace pdc::tools
