#include "catch_amalgamated.hpp"

#include "polysched/oracle.hpp"
#include "polysched/random.hpp"
#include "polysched/schedulers.hpp"
#include "polysched/slots.hpp"
#include "support.hpp"

using namespace polysched;
using namespace fixtures;

namespace {

// Every schedule of period <= max_period built from single matchings, by
// exhaustive product; returns the least heat found (or validity for DPS).
std::vector<std::vector<int>> all_matchings(const Graph& g) {
    std::vector<std::vector<int>> out;
    const int m = g.num_edges();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> M;
        for (int e = 0; e < m; ++e)
            if (mask >> e & 1) M.push_back(e);
        if (is_matching(g, M)) out.push_back(M);
    }
    return out;
}

template <class F>
void for_each_schedule(const Graph& g, int max_period, F&& f) {
    auto ms = all_matchings(g);
    for (int T = 1; T <= max_period; ++T) {
        std::vector<std::size_t> idx(T, 0);
        while (true) {
            std::vector<std::vector<int>> days;
            for (int t = 0; t < T; ++t) days.push_back(ms[idx[t]]);
            f(Schedule(days));
            int p = 0;
            while (p < T && ++idx[p] == ms.size()) idx[p++] = 0;
            if (p == T) break;
        }
    }
}

DpsInstance random_dps(Rng& rng, int nmax, int mmax, std::int64_t fmax) {
    for (;;) {
        const int n = static_cast<int>(rng.uniform(2, nmax));
        std::vector<std::pair<int, int>> es;
        std::vector<std::int64_t> f;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng.bernoulli(Rational(1, 2)) && static_cast<int>(es.size()) < mmax) {
                    es.emplace_back(a, b);
                    f.push_back(rng.uniform(1, fmax));
                }
        if (!es.empty()) return DpsInstance(Graph::of_size(n, es), f);
    }
}

}  // namespace

TEST_CASE("slot colours") {
    CHECK(slot_color(0) == SlotColor::Red);
    CHECK(slot_color(5) == SlotColor::Purple);
    CHECK(slot_color(8) == SlotColor::Green);
    CHECK(slot_color(4) == SlotColor::Blue);
    CHECK(slot_color(3) == SlotColor::Red);
    CHECK_THROWS_AS(slot_color(-1), InvalidInput);
    for (int t = 0; t < 36; ++t) {
        CHECK(slot_color(t) == slot_color(t + 6));
        if (t % 3 < 2) CHECK(slot_color(t) == slot_color(t + 3));
    }
}

TEST_CASE("feasibility examples") {
    auto two = dps_feasible(DpsInstance(star_graph(2), {2, 2}));
    REQUIRE(two.feasible());
    CHECK(two.schedule->period() == 2);
    CHECK(window_valid(*two.schedule, DpsInstance(star_graph(2), {2, 2})));
    CHECK(dps_feasible(DpsInstance(star_graph(3), {2, 2, 2})).status == FeasibilityResult::Status::Infeasible);
    CHECK(dps_feasible(DpsInstance(complete_graph(3), {2, 2, 2})).status == FeasibilityResult::Status::Infeasible);
    CHECK(dps_feasible(DpsInstance(star_graph(3), {2, 3, 6})).status == FeasibilityResult::Status::Infeasible);
    CHECK(dps_feasible(DpsInstance(star_graph(3), {2, 4, 4})).feasible());
    auto r = dps_feasible(DpsInstance(complete_graph(5), std::vector<std::int64_t>(10, 9)), 1000);
    CHECK(r.status == FeasibilityResult::Status::Refused);
    // two components: periods 2 and 3 merge to 6
    DpsInstance two_parts(Graph::of_size(5, {{0, 1}, {0, 2}, {3, 4}}), {2, 2, 3});
    auto merged = dps_feasible(two_parts);
    REQUIRE(merged.feasible());
    CHECK(window_valid(*merged.schedule, two_parts));
}

TEST_CASE("feasibility agrees with exhaustive short schedules") {
    Rng rng(31);
    for (int round = 0; round < 60; ++round) {
        DpsInstance inst = random_dps(rng, 4, 4, 4);
        auto r = dps_feasible(inst);
        REQUIRE(r.status != FeasibilityResult::Status::Refused);
        bool found = false;
        for_each_schedule(inst.graph, 4, [&](const Schedule& s) {
            if (!found && window_valid(s, inst)) found = true;
        });
        if (found) CHECK(r.feasible());
        if (r.feasible()) CHECK(window_valid(*r.schedule, inst));
        if (!r.feasible()) CHECK_FALSE(found);
        if (gstar(dps_to_ops(inst)) > 1) CHECK_FALSE(r.feasible());
    }
}

TEST_CASE("low-density power-of-two stars are feasible") {
    Rng rng(32);
    for (int round = 0; round < 30; ++round) {
        const int k = static_cast<int>(rng.uniform(1, 4));
        std::vector<std::int64_t> f;
        for (int i = 0; i < k; ++i) f.push_back(std::int64_t{1} << rng.uniform(1, 4));
        DpsInstance d(star_graph(k), f);
        if (local_density(d).max > Rational(1, 2)) continue;
        CHECK(dps_feasible(d).feasible());
    }
}

TEST_CASE("optimal heat examples") {
    CHECK(optimal_heat(OpsInstance(path_graph(1), uniform(1, 1))) == 1);
    OpsInstance stars2(Graph::of_size(5, {{0, 1}, {2, 3}, {2, 4}}), rats({{1, 1}, {1, 2}, {1, 2}}));
    CHECK(optimal_heat(stars2) == 1);
    OpsInstance tri(complete_graph(3), uniform(3, 1));
    CHECK(optimal_heat(tri) == 3);
    CHECK(*heat(colored_round_robin(tri.graph), tri).heat == 3);
}

TEST_CASE("optimal heat bounded by short exhaustive schedules and by gstar") {
    Rng rng(33);
    for (int round = 0; round < 25; ++round) {
        DpsInstance shape = random_dps(rng, 4, 4, 1);
        std::vector<Rational> g;
        for (int e = 0; e < shape.num_edges(); ++e) g.emplace_back(rng.uniform(1, 4), rng.uniform(1, 4));
        OpsInstance inst(shape.graph, g);
        Rational opt = optimal_heat(inst);
        CHECK(opt >= gstar(inst));
        std::optional<Rational> best;
        for_each_schedule(inst.graph, 4, [&](const Schedule& s) {
            auto h = heat(s, inst);
            if (!h.infinite() && (!best || *h.heat < *best)) best = *h.heat;
        });
        REQUIRE(best);
        CHECK(opt <= *best);
        auto r = dps_feasible(ops_to_dps(inst, opt));
        REQUIRE(r.feasible());
        CHECK(*heat(*r.schedule, inst).heat <= opt);
    }
}

TEST_CASE("feasibility is monotone in the target heat") {
    Rng rng(34);
    for (int round = 0; round < 20; ++round) {
        DpsInstance shape = random_dps(rng, 5, 5, 1);
        std::vector<Rational> g;
        for (int e = 0; e < shape.num_edges(); ++e) g.emplace_back(1, rng.uniform(1, 4));
        OpsInstance inst(shape.graph, g);
        bool seen_feasible = false;
        for (Rational h = max_growth(inst); h <= 4 * gstar(inst); h += Rational(1, 4)) {
            bool ok = dps_feasible(ops_to_dps(inst, h)).feasible();
            if (seen_feasible) CHECK(ok);
            seen_feasible = seen_feasible || ok;
        }
    }
}
