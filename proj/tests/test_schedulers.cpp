#include "catch_amalgamated.hpp"

#include "polysched/converters.hpp"
#include "polysched/schedulers.hpp"
#include "polysched/random.hpp"
#include "support.hpp"

using namespace polysched;
using namespace fixtures;

namespace {

// Literal day-by-day simulation with rational heats.
struct NaiveRf {
    std::vector<std::vector<int>> days;
    Rational max_heat{0};
};

NaiveRf naive_reduce_fastest(const OpsInstance& inst, const Rational& x, int horizon, std::vector<int> order) {
    const int m = inst.num_edges();
    Rational G = 0;
    for (int v = 0; v < inst.graph.num_people(); ++v) {
        Rational s = 0;
        for (int e : inst.graph.incident(v)) s += inst.growth[e];
        if (s > G) G = s;
    }
    std::vector<Rational> h(m, Rational(0));
    NaiveRf out;
    for (int t = 0; t < horizon; ++t) {
        for (int e = 0; e < m; ++e) h[e] += inst.growth[e];
        std::vector<int> today;
        for (int e : order) {
            if (h[e] < x * G) continue;
            bool free = true;
            for (int f : today)
                if (inst.graph.adjacent(e, f)) free = false;
            if (!free) continue;
            today.push_back(e);
            out.max_heat = std::max(out.max_heat, h[e]);
            h[e] = 0;
        }
        std::sort(today.begin(), today.end());
        out.days.push_back(today);
    }
    for (int e = 0; e < m; ++e) out.max_heat = std::max(out.max_heat, h[e]);
    return out;
}

OpsInstance random_ops(Rng& rng, int nmax) {
    for (;;) {
        const int n = static_cast<int>(rng.uniform(2, nmax));
        std::vector<std::pair<int, int>> es;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng.bernoulli(Rational(1, 2))) es.emplace_back(a, b);
        if (es.empty()) continue;
        std::vector<Rational> g;
        for (std::size_t i = 0; i < es.size(); ++i) g.emplace_back(rng.uniform(1, 8), rng.uniform(1, 8));
        return OpsInstance(Graph::of_size(n, es), g);
    }
}

}  // namespace

TEST_CASE("reduce_fastest examples") {
    SECTION("two-edge star stays below x+2") {
        OpsInstance inst(star_graph(2), rats({{1, 2}, {1, 2}}));
        auto tr = reduce_fastest(inst, {4, 100, {}});
        CHECK(tr.max_heat_seen < 6);
        CHECK(tr.schedule_prefix.size() == 100);
    }
    SECTION("single edge with x=2 is served every other day") {
        OpsInstance inst(path_graph(1), uniform(1, 1));
        auto tr = reduce_fastest(inst, {2, 20, {}});
        CHECK(tr.max_heat_seen == 2);
        for (int t = 0; t < 20; ++t) CHECK(tr.schedule_prefix[t].size() == (t % 2 == 1 ? 1u : 0u));
    }
    SECTION("errors and warnings") {
        OpsInstance inst(path_graph(1), uniform(1, 1));
        CHECK_THROWS_AS(reduce_fastest(inst, {4, 0, {}}), InvalidInput);
        CHECK_THROWS_AS(reduce_fastest(inst, {4, 5, std::vector<int>{1}}), InvalidInput);
        CHECK(reduce_fastest(inst, {Rational(3, 2), 5, {}}).warnings.size() == 1);
    }
}

TEST_CASE("reduce_fastest agrees with a literal rational simulation") {
    Rng rng(21);
    for (int round = 0; round < 60; ++round) {
        OpsInstance inst = random_ops(rng, 7);
        Rational x(rng.uniform(4, 20), 4);
        std::vector<int> tie(inst.num_edges());
        for (int e = 0; e < inst.num_edges(); ++e) tie[e] = e;
        rng.shuffle(tie);
        auto tr = reduce_fastest(inst, {x, 150, tie});
        auto ref = naive_reduce_fastest(inst, x, 150, rf_scan_order(inst, tie));
        CHECK(tr.schedule_prefix == ref.days);
        CHECK(tr.max_heat_seen == ref.max_heat);
        CHECK(prefix_heat(tr.schedule_prefix, inst).max_heat == tr.max_heat_seen);
        auto again = reduce_fastest(inst, {x, 150, tie});
        CHECK(again.schedule_prefix == tr.schedule_prefix);
        CHECK(again.heats_final == tr.heats_final);
    }
}

TEST_CASE("polygreedy examples") {
    Schedule s = polygreedy(DpsInstance(star_graph(2), {4, 4}));
    CHECK(s.days == std::vector<std::vector<int>>{{0}, {1}, {}, {}});
    try {
        polygreedy(DpsInstance(star_graph(4), {2, 4, 8, 8}));
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.hypothesis == "local density at most 1/2");
    }
    try {
        polygreedy(DpsInstance(star_graph(2), {3, 8}));
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.hypothesis == "power-of-two frequencies");
    }
    DpsInstance p3(path_graph(3), {4, 4, 4});
    Schedule ps = polygreedy(p3);
    CHECK(ps.period() == 4);
    CHECK(validate_dps(ps, p3).empty());
    CHECK(window_valid(ps, p3));
}

TEST_CASE("polygreedy on random power-of-two instances recurs exactly at f") {
    Rng rng(8);
    int built = 0;
    while (built < 100) {
        const int n = static_cast<int>(rng.uniform(2, 10));
        std::vector<std::pair<int, int>> es;
        std::vector<std::int64_t> f;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng.bernoulli(Rational(1, 3))) {
                    es.emplace_back(a, b);
                    f.push_back(std::int64_t{1} << rng.uniform(1, 5));
                }
        DpsInstance inst(Graph::of_size(n, es), f);
        if (es.empty() || local_density(inst).max > Rational(1, 2)) continue;
        ++built;
        Schedule s = polygreedy(inst);
        CHECK(window_valid(s, inst));
        auto rs = recurrence_times(s, inst.num_edges());
        for (int e = 0; e < inst.num_edges(); ++e) CHECK(rs[e] == inst.freq[e]);
    }
}

TEST_CASE("schedule_low_density examples") {
    CHECK_THROWS_AS(schedule_low_density(DpsInstance(star_graph(2), {5, 9})), PreconditionError);
    DpsInstance s812(star_graph(2), {8, 12});
    Schedule s = schedule_low_density(s812);
    CHECK(s.period() == 8);
    CHECK(window_valid(s, s812));
    // a lone f=3 edge has local density 1/3, above the 1/4 hypothesis
    CHECK_THROWS_AS(schedule_low_density(DpsInstance(path_graph(1), {3})), PreconditionError);
    Schedule one = schedule_low_density(DpsInstance(path_graph(1), {5}));
    CHECK(one.period() == 4);
}

TEST_CASE("compact examples") {
    SECTION("colour schedule compacted against itself") {
        OpsInstance inst(star_graph(3), uniform(3, 1));
        Schedule sc = colored_round_robin(inst.graph);
        Schedule sp = compact(inst, sc.days);
        CHECK(sp.period() == 6);
        // each edge sits on two adjacent days out of six
        CHECK(*heat(sp, inst).heat == 5);
        CHECK(*heat(sp, inst).heat <= 2 * *heat(sc, inst).heat);
    }
    SECTION("disjoint stars with per-star round robins") {
        // star i has i edges of growth 1/i
        std::vector<std::pair<int, int>> es{{0, 1}, {2, 3}, {2, 4}, {5, 6}, {5, 7}, {5, 8}};
        OpsInstance inst(Graph::of_size(9, es), rats({{1, 1}, {1, 2}, {1, 2}, {1, 3}, {1, 3}, {1, 3}}));
        std::vector<std::vector<int>> sa;
        for (int t = 0; t < 6; ++t) sa.push_back({0, 1 + t % 2, 3 + t % 3});
        CHECK(*heat(Schedule(sa), inst).heat == 1);
        Schedule sp = compact(inst, sa);
        CHECK(sp.period() == 6);
        CHECK(*heat(sp, inst).heat <= 4);
    }
    SECTION("errors") {
        OpsInstance inst(star_graph(3), uniform(3, 1));
        CHECK_THROWS_AS(compact(inst, {{0}, {1}}), InvalidInput);
        CHECK_THROWS_AS(compact(inst, {{0}, {1}, {1}}), InvalidInput);
    }
}
