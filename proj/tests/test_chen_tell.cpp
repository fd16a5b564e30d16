#include <gtest/gtest.h>

#include <sstream>

#include "pdc/chen_tell.hpp"
#include "pdc/errors.hpp"

using namespace pdc;

namespace {

// alpha_(i,j) on grid points, straight from the gate values: sum over the
// trailing j grid coordinates of wire(i, w, u, v) * NAND(u, v).
Elem grid_oracle(const PolyLadder& l, const std::vector<std::vector<int>>& val, int idx, const Point& x) {
    const int m = l.m(), h = l.h();
    auto gate = [&](const Point& z, int off) {
        int g = 0, scale = 1;
        for (int j = 0; j < m; ++j) {
            g += static_cast<int>(z[off + j]) * scale;
            scale *= h;
        }
        return g;
    };
    auto [i, j] = l.stage(idx);
    if (idx == 1) {
        const int g = gate(x, 0);
        return g < l.circuit().width ? static_cast<Elem>(val[0][g]) : 0;
    }
    Elem sum = 0;
    int free = 1;
    for (int k = 0; k < j; ++k) free *= h;
    for (int c = 0; c < free; ++c) {
        Point y = x;
        int cc = c;
        for (int k = 0; k < j; ++k) {
            y[3 * m - j + k] = static_cast<Elem>(cc % h);
            cc /= h;
        }
        const int w = gate(y, 0), u = gate(y, m), v = gate(y, 2 * m);
        const int width = l.circuit().width;
        if (w >= width || u >= width || v >= width) continue;
        if (l.circuit().wire(i, w, u, v)) sum ^= static_cast<Elem>(1 - val[i - 1][u] * val[i - 1][v]);
    }
    return sum;
}

Point random_point(const Field& f, int n, RandomStream& rng) {
    Point x(n);
    for (auto& c : x) c = static_cast<Elem>(rng.below(f.size()));
    return x;
}

}  // namespace

TEST(LayeredCircuit, NandAndPassthrough) {
    LayeredCircuit c(2, 1, 2, 1);
    c.set_gate(1, 0, 0, 1);
    EXPECT_EQ(c.evaluate(BitString::from_binary("11")).binary(), "0");
    EXPECT_EQ(c.evaluate(BitString::from_binary("10")).binary(), "1");
    auto id = LayeredCircuit::passthrough(2, 2);
    EXPECT_EQ(id.evaluate(BitString::from_binary("10")).binary(), "10");
}

TEST(LayeredCircuit, FileRoundTrip) {
    RandomStream rng(1);
    auto c = LayeredCircuit::random(4, 3, 3, 2, rng);
    std::stringstream ss;
    c.write(ss);
    auto d = LayeredCircuit::read(ss);
    EXPECT_EQ(d.feeds, c.feeds);
    EXPECT_EQ(d.n_in, 3);
    std::istringstream bad("2 1 2 1\n1 0 0 5\n");
    EXPECT_THROW(LayeredCircuit::read(bad), UsageError);
}

TEST(PolyLadder, DPrimeFormula) {
    RandomStream rng(2);
    for (int m : {1, 2})
        for (int depth : {1, 2, 3}) {
            PolyLadder l(Field::make(6), 4, m, LayeredCircuit::random(4, depth, 2, 2, rng), BitString(2));
            EXPECT_EQ(l.d_prime(), (2 * m + 1) * depth + 1);
            EXPECT_EQ(l.stage(l.d_prime()), std::make_pair(depth, 2 * m));
        }
}

TEST(PolyLadder, BaseEvalMatchesLagrange) {
    // h = 2, m = 1 over GF(4): delta_0(w) = w + 1, delta_1(w) = w.
    auto f = Field::make(2);
    LayeredCircuit c(2, 1, 2, 1);
    c.set_gate(1, 0, 0, 1);
    PolyLadder l(f, 2, 1, c, BitString::from_binary("10"));
    for (Elem w = 0; w < 4; ++w)
        for (Elem d = 0; d < 4; ++d) EXPECT_EQ(l.base_eval({w, d, 0}), f->add(w, 1));
    PolyLadder l2(f, 2, 1, c, BitString::from_binary("11"));
    for (Elem w = 0; w < 4; ++w) EXPECT_EQ(l2.base_eval({w, 0, 0}), 1u);
}

TEST(PolyLadder, PhiHatAgreesWithWiresOnGrid) {
    RandomStream rng(3);
    auto c = LayeredCircuit::random(4, 2, 3, 2, rng);
    PolyLadder l(Field::make(6), 4, 1, c, BitString::from_binary("101"));
    for (int i = 1; i <= 2; ++i)
        for (Elem w = 0; w < 4; ++w)
            for (Elem u = 0; u < 4; ++u)
                for (Elem v = 0; v < 4; ++v)
                    ASSERT_EQ(l.phi_hat(i, {w, u, v}), c.wire(i, w, u, v) ? 1u : 0u);
}

TEST(PolyLadder, TablesAgreeWithGridOracle) {
    RandomStream rng(4);
    for (int trial = 0; trial < 3; ++trial) {
        auto c = LayeredCircuit::random(4, 2, 4, 4, rng);
        BitString in = BitString::from_word(rng.below(16), 4);
        PolyLadder l(Field::make(2), 2, 2, c, in);
        const auto val = c.layer_values(in);
        for (int idx = 1; idx <= l.d_prime(); ++idx) {
            auto t = l.table(idx);
            for (std::uint64_t g = 0; g < 64; ++g) {
                Point x(6);
                std::uint64_t gg = g;
                for (int k = 0; k < 6; ++k, gg >>= 1) x[k] = gg & 1;
                ASSERT_EQ(t->eval(x), grid_oracle(l, val, idx, x)) << idx;
            }
        }
    }
}

TEST(PolyLadder, LayerPolynomialIsLastSumcheckPolynomial) {
    RandomStream rng(5);
    auto c = LayeredCircuit::random(4, 2, 2, 2, rng);
    BitString in = BitString::from_binary("01");
    PolyLadder l(Field::make(6), 4, 1, c, in);
    const auto val = c.layer_values(in);
    for (int i = 1; i <= 2; ++i) {
        auto t = l.table(1 + i * 3);
        for (int g = 0; g < 4; ++g) EXPECT_EQ(t->eval({static_cast<Elem>(g), 0, 0}), static_cast<Elem>(val[i][g]));
    }
}

TEST(PolyLadder, DsrChainMatchesTables) {
    RandomStream rng(6);
    auto c = LayeredCircuit::random(4, 2, 4, 4, rng);
    PolyLadder l(Field::make(6), 4, 1, c, BitString::from_binary("1101"));
    const auto& f = *l.field();
    for (int idx = 2; idx <= l.d_prime(); ++idx) {
        auto prev = l.table(idx - 1), cur = l.table(idx);
        const PointOracle po = [&](const Point& x) { return prev->eval(x); };
        for (int s = 0; s < 100; ++s) {
            const Point x = random_point(f, 3, rng);
            ASSERT_EQ(l.dsr_eval(idx, x, po), cur->eval(x));
        }
    }
    auto top = l.table(l.d_prime());
    for (int s = 0; s < 50; ++s) {
        const Point x = random_point(f, 3, rng);
        ASSERT_EQ(l.chain_eval(l.d_prime(), x), top->eval(x));
    }
}

TEST(PolyLadder, DegreeAudit) {
    RandomStream rng(7);
    auto c = LayeredCircuit::random(4, 2, 4, 4, rng);
    PolyLadder l(Field::make(6), 4, 1, c, BitString::from_binary("0110"));
    EXPECT_EQ(l.degree(), 15);
    const auto& f = *l.field();
    for (int idx = 1; idx <= l.d_prime(); ++idx) {
        auto t = l.table(idx);
        for (int s = 0; s < 20; ++s)
            ASSERT_LE(line_degree(t->oracle(), f, random_point(f, 3, rng), random_point(f, 3, rng)), l.degree());
    }
}

TEST(PolyLadder, FaithfulOutput) {
    RandomStream rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        auto c = LayeredCircuit::random(4, 2, 4, 4, rng);
        BitString in = BitString::from_word(rng.below(16), 4);
        PolyLadder l(Field::make(6), 4, 1, c, in);
        auto top = l.table(l.d_prime());
        const auto want = c.evaluate(in);
        for (int g = 0; g < 4; ++g) ASSERT_EQ(l.faithful_output(g, top->oracle()), want.get(g));
    }
    PolyLadder l(Field::make(6), 4, 1, LayeredCircuit::passthrough(2, 2), BitString::from_binary("10"));
    auto top = l.table(l.d_prime());
    EXPECT_EQ(l.faithful_output(0, top->oracle()), 1);
    EXPECT_EQ(l.faithful_output(1, top->oracle()), 0);
    EXPECT_THROW(l.faithful_output(0, [](const Point&) { return Elem{7}; }), ConsistencyError);
}

namespace {

struct CtToy {
    FieldPtr f = Field::make(5);
    LayeredCircuit c;
    BitString in = BitString::from_binary("01");
    CtParams params = CtParams::toy(f, 2, 1, 2);

    CtToy() {
        c = LayeredCircuit(2, 1, 2, 2);
        c.set_gate(1, 0, 0, 1);
        c.set_gate(1, 1, 1, 1);
    }
};

}  // namespace

TEST(CtGenerate, CountAndMembership) {
    CtToy t;
    PolyLadder l(t.f, 2, 1, t.c, t.in);
    auto h = ct_generate(l, t.params);
    const auto cands = build_candidate_set(t.f, 3);
    auto t1 = l.table(1);
    auto first = modified_generate(t1->oracle(), t.params.recon.su, cands);
    EXPECT_EQ(h.count(), first.count() * static_cast<std::uint64_t>(l.d_prime()));
    const std::uint64_t per_cand = 3ULL * 32 * 32 * 32 * 32 + (1ULL << 30);
    EXPECT_EQ(first.count(), per_cand * cands.matrices.size());
    for (std::uint64_t i : {0ULL, 17ULL, 3ULL * 32 * 32 * 32 * 32 + 5})
        EXPECT_EQ(h.at(i), first.at(i));
    auto again = ct_generate(l, t.params);
    EXPECT_EQ(again.at(123456), h.at(123456));
}

TEST(CtReconstruct, PlantedLayersGiveCircuitOutput) {
    CtToy t;
    PolyLadder l(t.f, 2, 1, t.c, t.in);
    auto planted = [](int, const PointOracle& layer) { return std::make_unique<PlantedOracles>(layer); };
    auto out = ct_reconstruct(l, planted, t.params, RandomStream(1));
    ASSERT_TRUE(out.output);
    EXPECT_EQ(*out.output, t.c.evaluate(t.in));
    EXPECT_EQ(static_cast<int>(out.layers.size()), l.d_prime() - 1);
}

TEST(CtReconstruct, AdversariesGiveBottomOrTruth) {
    CtToy t;
    PolyLadder l(t.f, 2, 1, t.c, t.in);
    const auto truth = t.c.evaluate(t.in);
    Distinguisher one{2, [](const BitString&) { return true; }};
    auto out = ct_reconstruct(l, one, t.params, RandomStream(2));
    EXPECT_TRUE(!out.output || *out.output == truth);
    PolyLadder other(t.f, 2, 1, t.c, BitString::from_binary("11"));
    auto wrong = [&other](int idx, const PointOracle&) {
        auto tb = other.table(idx);
        return std::make_unique<PlantedOracles>(tb->oracle());
    };
    for (std::uint64_t s = 0; s < 3; ++s) {
        auto o = ct_reconstruct(l, wrong, t.params, RandomStream(10 + s));
        EXPECT_TRUE(!o.output || *o.output == truth);
    }
}
