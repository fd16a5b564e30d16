#include <gtest/gtest.h>

#include "pdc/errors.hpp"
#include "pdc/genmatrix.hpp"
#include "pdc/su_hsg.hpp"

using namespace pdc;

namespace {

struct Fixture {
    FieldPtr f;
    int m;
    Matrix a;
    MultiPoly poly;
    TruthTable table;
};

Fixture make_fixture(int k, int m, int delta, std::uint64_t seed) {
    auto f = Field::make(k);
    auto s = build_candidate_set(f, m);
    RandomStream rng(seed);
    auto poly = MultiPoly::random(f, m, delta, rng);
    auto table = TruthTable::tabulate(f, m, delta, [&](const Point& x) { return poly.eval(x); });
    return Fixture{f, m, s.matrices.back(), poly, table};
}

SuParams toy_params(const FieldPtr& f, int m, int M, int delta, int r) {
    SuParams s;
    s.field = f;
    s.m = m;
    s.M = M;
    s.delta = delta;
    s.r = r;
    s.list_size = static_cast<int>(f->size());
    s.predictor_reps = 3 * M;
    s.hadamard_gamma = 0.875;
    return s;
}

}  // namespace

TEST(PAryPrg, SmallExample) {
    auto f = Field::make(2);
    Matrix a(f.get(), 1);
    a.at(0, 0) = 2;
    PointOracle p = [](const Point& x) { return x[0]; };
    EXPECT_EQ(p_ary_prg(p, a, 0, {1}, 2), (std::vector<Elem>{2, 3}));
}

TEST(PAryPrg, MatchesNaivePowers) {
    auto fx = make_fixture(4, 2, 2, 3);
    PointOracle p = fx.table.oracle();
    RandomStream rng(4);
    for (int t = 0; t < 20; ++t) {
        Point x{static_cast<Elem>(rng.below(16)), static_cast<Elem>(rng.below(16))};
        for (int j = 0; j < 2; ++j) {
            auto out = p_ary_prg(p, fx.a, j, x, 5);
            for (int k = 1; k <= 5; ++k)
                ASSERT_EQ(out[k - 1], p(mat_pow_vec(fx.a, static_cast<std::uint64_t>(k) << (4 * j), x)));
        }
    }
}

TEST(Hsu, ExampleEntryAndCount) {
    auto f = Field::make(2);
    Matrix a(f.get(), 1);
    a.at(0, 0) = 2;
    SuParams s = toy_params(f, 1, 2, 1, 1);
    auto h = hsu_generate([](const Point& x) { return x[0]; }, a, s);
    EXPECT_EQ(h.count(), 16u);
    EXPECT_EQ(h.at((0 * 4 + 1) * 4 + 1).binary(), "01");
}

TEST(Hsu, CountFormula) {
    auto fx = make_fixture(4, 2, 2, 1);
    auto h = hsu_generate(fx.table.oracle(), fx.a, toy_params(fx.f, 2, 4, 2, 1));
    EXPECT_EQ(h.count(), 2u * 256u * 16u);
    EXPECT_EQ(h.length(), 4u);
}

TEST(GoodCurvesTest, IntersectionGuarantees) {
    auto fx = make_fixture(4, 2, 2, 5);
    SuParams s = toy_params(fx.f, 2, 4, 2, 2);
    RandomStream rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = sample_good_curves(fx.a, s, rng);
        EXPECT_NE(g.c1.eval(1), Point(2, 0));
        EXPECT_LE(g.c1.degree(), s.v());
        EXPECT_LE(g.c2.degree(), s.v());
        for (std::uint64_t i : {0ULL, 1ULL, 7ULL, 200ULL}) {
            const Matrix ai = fx.a.pow(i);
            for (int j = 0; j < 2; ++j) {
                const Matrix aij = fx.a.pow(i + (1ULL << (4 * j)));
                EXPECT_GE(curve_agreement_set(g.c1, aij, g.c2, ai).size(), 2u);
            }
            EXPECT_GE(curve_agreement_set(g.c1, ai, g.c2, ai).size(), 2u);
        }
    }
}

TEST(LearnNextCurve, ExactPredictorRecoversAndBadReferenceRejects) {
    auto fx = make_fixture(4, 1, 2, 9);
    SuParams s = toy_params(fx.f, 1, 4, 2, 1);
    RandomStream rng(1);
    auto curve = Curve::random(fx.f.get(), 1, s.v(), rng);
    PointOracle p = fx.table.oracle();
    std::vector<EvalTable> tabs(3);
    std::vector<Point> pts;
    EvalTable truth(16);
    for (Elem t = 0; t < 16; ++t) {
        const Point x = curve.eval(t);
        pts.push_back(x);
        truth[t] = p(x);
        for (int k = 1; k <= 3; ++k) tabs[k - 1].push_back(p(mat_pow_vec(fx.a, 15 - k, x)));
    }
    std::vector<const EvalTable*> in{&tabs[0], &tabs[1], &tabs[2]};
    PlantedPredictor pred(p);
    auto out = learn_next_curve(pred, 0, in, &pts, {3}, truth, s);
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(*out, truth);
    EvalTable wrong = truth;
    wrong[3] ^= 1;
    EXPECT_FALSE(learn_next_curve(pred, 0, in, &pts, {3}, wrong, s).has_value());
}

TEST(Rsu, PlantedPredictorsGiveExactOrbitCircuit) {
    for (auto [k, m, M, delta, r] : {std::tuple{4, 1, 4, 2, 2}, std::tuple{4, 2, 3, 2, 1}}) {
        auto fx = make_fixture(k, m, delta, 11 + m);
        SuParams s = toy_params(fx.f, m, M, delta, r);
        PointOracle p = fx.table.oracle();
        RandomStream rng(3);
        auto res = rsu_reconstruct(p, fx.a, s, planted_predictors(p, s), rng);
        ASSERT_TRUE(res.has_value());
        const std::uint64_t order = point_count(*fx.f, m) - 1;
        for (std::uint64_t i = 0; i <= order; ++i) {
            auto val = res->circuit->eval(i);
            ASSERT_TRUE(val.has_value()) << i;
            ASSERT_EQ(*val, p(mat_pow_vec(fx.a, i, res->v))) << "i=" << i << " m=" << m;
        }
        EXPECT_EQ(res->circuit->stats().failures, 0u);
    }
}

TEST(Rsu, AvoiderDrivenReconstruction) {
    // p = 32, m = 1, M = 16: the 1024 HSU strings are sparse in {0,1}^16, so
    // their complement is a genuine avoider, and exponents 16..30 must be learned.
    auto fx = make_fixture(5, 1, 3, 21);
    SuParams s = toy_params(fx.f, 1, 16, 3, 1);
    PointOracle p = fx.table.oracle();
    auto d = complement_distinguisher(hsu_generate(p, fx.a, s), 1 << 20);
    RandomStream rng(8);
    auto preds = hybrid_predictors(d, s, rng.split(1));
    auto res = rsu_reconstruct(p, fx.a, s, preds, rng);
    ASSERT_TRUE(res.has_value());
    int correct = 0, wrong = 0;
    for (std::uint64_t i = 1; i <= 31; ++i) {
        auto val = res->circuit->eval(i);
        if (!val) continue;
        if (*val == p(mat_pow_vec(fx.a, i, res->v))) ++correct; else ++wrong;
    }
    EXPECT_EQ(wrong, 0);
    EXPECT_EQ(correct, 31);
    EXPECT_GT(res->circuit->stats().calls, 0u);
}

TEST(Rsu, RandomDistinguisherNeverGivesWrongValues) {
    auto fx = make_fixture(4, 1, 2, 22);
    SuParams s = toy_params(fx.f, 1, 8, 2, 1);
    PointOracle p = fx.table.oracle();
    RandomStream rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const std::uint64_t key = rng.next();
        Distinguisher d{8, [key](const BitString& z) { return (hash_words({key, z.word()}) & 3) != 0; }};
        auto res = rsu_reconstruct(p, fx.a, s, hybrid_predictors(d, s, rng.split(trial)), rng);
        ASSERT_TRUE(res.has_value());
        for (std::uint64_t i = 1; i <= 15; ++i) {
            auto val = res->circuit->eval(i);
            if (val) EXPECT_EQ(*val, p(mat_pow_vec(fx.a, i, res->v)));
        }
    }
}
