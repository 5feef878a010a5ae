#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ggism/xp.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <bit>
#include <random>

using namespace ggism;

namespace {

Triple t(int dis, int agent, int partner) { return Triple{Rational(dis), agent, partner}; }

struct Fixture {
    Instance inst = test::example_instance();
    DisutilityFunction dfun = DisutilityFunction::identity();
    RotationPoset poset = build_poset(inst);
    XpContext ctx{inst, poset, dfun};
};

Rational brute_opt(const Instance& inst, const DisutilityFunction& dfun, const GgiWeights& w) {
    bool first = true;
    Rational best(0);
    for (const Matching& m : test::brute_force_stable(inst)) {
        Rational v = ggi(w, disutility_vector(inst, dfun, m));
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

}  // namespace

TEST_CASE("triples order by dissatisfaction first, descending") {
    CHECK(t(10, 20, 9) < t(9, 20, 8));
    CHECK(t(7, 14, 6) < t(5, 4, 6));
    CHECK(t(5, 4, 6) < t(5, 5, 7));
    CHECK(t(5, 4, 6) < t(5, 4, 7));
    CHECK(t(3, 1, 1) == t(3, 1, 1));
}

TEST_CASE("context tables of the running example") {
    Fixture f;
    CHECK(f.ctx.n() == 10);
    CHECK(f.ctx.anc_incl(0) == std::vector<int>{0});
    CHECK(f.ctx.anc_incl(2) == std::vector<int>{0, 1, 2});
    CHECK(f.ctx.desc_incl(0) == std::vector<int>{0, 2});
    CHECK(f.ctx.desc_incl(2) == std::vector<int>{2});

    // Extreme dissatisfactions per rotation: women before elimination, men
    // after.
    CHECK(f.ctx.dmax_w(0) == Rational(7));
    CHECK(f.ctx.dmax_w(1) == Rational(7));
    CHECK(f.ctx.dmax_w(2) == Rational(10));
    CHECK(f.ctx.dmax_m(0) == Rational(5));
    CHECK(f.ctx.dmax_m(1) == Rational(5));
    CHECK(f.ctx.dmax_m(2) == Rational(5));

    CHECK(f.ctx.dis_of(20, 9) == Rational(10));  // w10 with m9
    CHECK(f.ctx.dis_of(4, 6) == Rational(5));    // m4 with w6
    CHECK(f.ctx.dis_of(1, 1) == Rational(1));
}

TEST_CASE("prefix folding pins down rotation constraints") {
    Fixture f;

    auto empty = build_prefix_state({}, f.ctx);
    REQUIRE(empty.has_value());
    CHECK(empty->constraints.in_set.empty());
    CHECK(empty->constraints.out_set.empty());
    CHECK(empty->remaining.size() == 20);
    CHECK_FALSE(empty->d_min.has_value());

    // (m9, w10) is a man-optimal pair: it survives only if its breaking
    // rotation stays out.
    auto s1 = build_prefix_state({t(10, 20, 9)}, f.ctx);
    REQUIRE(s1.has_value());
    CHECK(s1->constraints.in_set.empty());
    CHECK(s1->constraints.out_set == std::vector<int>{2});
    CHECK(s1->remaining.size() == 19);
    CHECK(std::find(s1->remaining.begin(), s1->remaining.end(), 20) == s1->remaining.end());
    CHECK(s1->d_min == Rational(10));

    // (m8, w10) requires its creating rotation and all its ancestors.
    auto s2 = build_prefix_state({t(9, 20, 8)}, f.ctx);
    REQUIRE(s2.has_value());
    CHECK(s2->constraints.in_set == ClosedSet{0, 1, 2});
    CHECK(s2->constraints.out_set.empty());
    CHECK(s2->d_min == Rational(9));

    // Contradictory folds collapse to nullopt: (m9, w9) needs the last
    // rotation in, (m9, w10) needs it out.
    CHECK_FALSE(build_prefix_state({t(10, 20, 9), t(9, 19, 9)}, f.ctx).has_value());

    CHECK_THROWS_AS(build_prefix_state({t(10, 20, 9), t(9, 20, 8)}, f.ctx),
                    std::invalid_argument);  // repeated agent
    CHECK_THROWS_AS(build_prefix_state({t(3, 99, 1)}, f.ctx), std::invalid_argument);
}

TEST_CASE("first-level expansion of the running example") {
    Fixture f;
    auto first = next_triples({}, 1, f.ctx);
    CHECK(first == std::set<Triple>{t(10, 20, 9), t(9, 20, 8)});

    // The position-1 candidates all come from the women's walk here: every
    // stable matching leaves w10 the unhappiest agent.
    auto state = build_prefix_state({}, f.ctx);
    REQUIRE(state.has_value());
    auto women = next_women(state->constraints, 1, state->remaining, f.ctx);
    auto men = next_men(state->constraints, 1, state->remaining, f.ctx);
    CHECK(women == first);
    CHECK(men.empty());
}

TEST_CASE("second-level expansions of the running example") {
    Fixture f;

    auto under1 = next_triples({t(10, 20, 9)}, 2, f.ctx);
    CHECK(under1 == std::set<Triple>{t(7, 14, 6), t(7, 15, 7), t(7, 16, 5), t(7, 17, 4),
                                     t(5, 4, 6), t(5, 5, 7), t(5, 6, 5), t(5, 7, 4)});

    auto under2 = next_triples({t(9, 20, 8)}, 2, f.ctx);
    CHECK(under2 == std::set<Triple>{t(5, 4, 6), t(5, 5, 7), t(5, 6, 5), t(5, 7, 4), t(5, 8, 10),
                                     t(5, 9, 9), t(5, 10, 8)});

    CHECK_THROWS_AS(next_triples({t(10, 20, 9)}, 3, f.ctx), std::invalid_argument);
    CHECK_THROWS_AS(next_triples({}, 2, f.ctx), std::invalid_argument);
}

TEST_CASE("top-K profile enumeration of the running example") {
    Fixture f;

    auto k1 = enumerate_topk(f.inst, f.dfun, 1);
    CHECK(k1 == std::vector<TripleVector>{{t(10, 20, 9)}, {t(9, 20, 8)}});

    auto k2 = enumerate_topk(f.inst, f.dfun, 2);
    std::vector<TripleVector> expected{
        {t(10, 20, 9), t(7, 14, 6)},  {t(10, 20, 9), t(7, 15, 7)}, {t(10, 20, 9), t(7, 16, 5)},
        {t(10, 20, 9), t(7, 17, 4)},  {t(10, 20, 9), t(5, 4, 6)},  {t(10, 20, 9), t(5, 5, 7)},
        {t(10, 20, 9), t(5, 6, 5)},   {t(10, 20, 9), t(5, 7, 4)},  {t(9, 20, 8), t(5, 4, 6)},
        {t(9, 20, 8), t(5, 5, 7)},    {t(9, 20, 8), t(5, 6, 5)},   {t(9, 20, 8), t(5, 7, 4)},
        {t(9, 20, 8), t(5, 8, 10)},   {t(9, 20, 8), t(5, 9, 9)},   {t(9, 20, 8), t(5, 10, 8)},
    };
    CHECK(k2 == expected);
    CHECK(std::is_sorted(k2.begin(), k2.end()));

    // Every enumerated prefix is realized by at least one stable matching.
    auto all = enumerate_stable(f.poset, f.inst);
    for (const TripleVector& v : k2) {
        bool realized = false;
        for (auto& [set, m] : all) {
            DisutilityVector d = disutility_vector(f.inst, f.dfun, m);
            std::vector<Rational> sorted(d);
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            bool ok = true;
            for (size_t i = 0; i < v.size() && ok; ++i) {
                int agent = v[i].agent;
                int partner = v[i].partner;
                int actual = agent <= f.ctx.n() ? m.wife_of(agent) : m.husband_of(agent - f.ctx.n());
                ok = actual == partner && sorted[i] == v[i].dis;
            }
            realized = realized || ok;
        }
        CHECK(realized);
    }

    CHECK_THROWS_AS(enumerate_topk(f.inst, f.dfun, 0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_topk(f.inst, f.dfun, 21), std::invalid_argument);
}

TEST_CASE("exact solve on the running example") {
    Fixture f;

    std::vector<Rational> lambda(20, Rational(0));
    lambda[0] = Rational(39, 400);
    lambda[1] = Rational(37, 400);
    XpResult res = xp_solve(f.inst, f.dfun, GgiWeights(lambda));
    CHECK(res.value == Rational(67, 50));
    CHECK(res.matching == test::example_matchings().back());

    // Egalitarian and utilitarian specializations.
    CHECK(xp_solve(f.inst, f.dfun, head_weights(20, 1)).value == Rational(9));
    CHECK(xp_solve(f.inst, f.dfun, head_weights(20, 20)).value == Rational(61));

    // All-zero weights short-circuit to the man-optimal matching.
    XpResult zero = xp_solve(f.inst, f.dfun, GgiWeights(std::vector<Rational>(20, Rational(0))));
    CHECK(zero.value == Rational(0));
    CHECK(zero.matching == test::example_matchings().front());

    CHECK_THROWS_AS(xp_solve(f.inst, f.dfun, gini_weights(6)), std::invalid_argument);
}

TEST_CASE("threaded runs reproduce the sequential results") {
    Fixture f;
    CHECK(enumerate_topk(f.inst, f.dfun, 2, 4) == enumerate_topk(f.inst, f.dfun, 2, 1));
    CHECK(enumerate_topk(f.inst, f.dfun, 3, 4) == enumerate_topk(f.inst, f.dfun, 3, 1));

    GgiWeights w = gini_weights(20);
    XpResult seq = xp_solve(f.inst, f.dfun, w, 1);
    XpResult par = xp_solve(f.inst, f.dfun, w, 4);
    CHECK(seq.value == par.value);
    CHECK(seq.matching == par.matching);
}

TEST_CASE("profiles enumerated on random instances are exactly the stable ones") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + trial % 3;
        Instance inst = test::random_instance(rng, n);
        DisutilityFunction dfun = test::random_disutility(rng, n);
        const int K = 1 + trial % 3;

        // Oracle: all K-prefixes of brute-force profiles. When several agents
        // tie at the boundary dissatisfaction, each choice of representatives
        // is its own prefix.
        std::set<TripleVector> want;
        for (const Matching& m : test::brute_force_stable(inst)) {
            TripleVector profile;
            for (int a = 1; a <= n; ++a) {
                profile.push_back({dfun(inst.man_rank(a, m.wife_of(a))), a, m.wife_of(a)});
                profile.push_back(
                    {dfun(inst.woman_rank(a, m.husband_of(a))), n + a, m.husband_of(a)});
            }
            std::sort(profile.begin(), profile.end());
            const Rational theta = profile[K - 1].dis;
            TripleVector above, at;
            for (const Triple& t : profile) {
                if (t.dis > theta) above.push_back(t);
                else if (t.dis == theta) at.push_back(t);
            }
            const int need = K - static_cast<int>(above.size());
            for (unsigned mask = 0; mask < (1u << at.size()); ++mask) {
                if (std::popcount(mask) != need) continue;
                TripleVector prefix = above;
                for (size_t i = 0; i < at.size(); ++i)
                    if (mask & (1u << i)) prefix.push_back(at[i]);
                std::sort(prefix.begin(), prefix.end());
                want.insert(prefix);
            }
        }

        // Equal-dis runs may be visited in any order, so compare prefixes as
        // canonically sorted sets.
        std::set<TripleVector> got_canonical;
        for (TripleVector v : enumerate_topk(inst, dfun, K)) {
            for (size_t i = 0; i + 1 < v.size(); ++i) CHECK(v[i].dis >= v[i + 1].dis);
            std::sort(v.begin(), v.end());
            got_canonical.insert(std::move(v));
        }
        CHECK(got_canonical == want);
    }
}

TEST_CASE("exact solve agrees with brute force on random instances") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + trial % 5;
        Instance inst = test::random_instance(rng, n);
        DisutilityFunction dfun = test::random_disutility(rng, n);
        GgiWeights weights = test::random_weights(rng, 2 * n);

        XpResult res = xp_solve(inst, dfun, weights);
        CHECK(is_stable(inst, res.matching));
        CHECK(res.value == ggi(weights, disutility_vector(inst, dfun, res.matching)));
        CHECK(res.value == brute_opt(inst, dfun, weights));
    }
}
