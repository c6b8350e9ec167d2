#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polysched/coloring.hpp"
#include "polysched/core.hpp"

namespace polysched {

struct RfConfig {
    Rational x{4};
    std::int64_t horizon = 0;
    std::optional<std::vector<int>> tie_order;  // permutation of edge indices
};

struct RfTrace {
    std::vector<std::vector<int>> schedule_prefix;
    Rational max_heat_seen{0};
    std::int64_t day_of_max = -1;
    int edge_of_max = -1;
    std::vector<Rational> heats_final;
    std::vector<std::string> warnings;
};

// Scan order: decreasing growth, then tie_order position, then index.
inline std::vector<int> rf_scan_order(const OpsInstance& inst, const std::optional<std::vector<int>>& tie) {
    const int m = inst.num_edges();
    std::vector<int> pos(m);
    std::iota(pos.begin(), pos.end(), 0);
    if (tie) {
        if (tie->size() != static_cast<std::size_t>(m)) throw InvalidInput("tie_order must list every edge once");
        std::vector<char> seen(m, 0);
        for (std::size_t i = 0; i < tie->size(); ++i) {
            int e = (*tie)[i];
            if (e < 0 || e >= m || seen[e]) throw InvalidInput("tie_order is not a permutation of the edges");
            seen[e] = 1;
            pos[e] = static_cast<int>(i);
        }
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (inst.growth[a] != inst.growth[b]) return inst.growth[a] > inst.growth[b];
        if (pos[a] != pos[b]) return pos[a] < pos[b];
        return a < b;
    });
    return order;
}

// Heats start at 0. Each day every heat grows by g(e), then edges whose heat
// reached x*G* are added greedily in scan order and reset. Heat is tracked as
// an integer day count d per edge, heat = g(e)*d.
inline RfTrace reduce_fastest(const OpsInstance& inst, const RfConfig& cfg) {
    if (cfg.horizon <= 0) throw InvalidInput("horizon must be positive");
    if (cfg.x <= 0) throw InvalidInput("x must be positive");
    if (inst.num_edges() == 0) throw InvalidInput("instance has no edges");
    const int m = inst.num_edges();
    const Graph& g = inst.graph;
    RfTrace tr;
    if (cfg.x < 2) tr.warnings.push_back("x < 2: heat may grow without bound");

    const Rational threshold = cfg.x * gstar(inst);
    std::vector<std::int64_t> need(m);
    for (int e = 0; e < m; ++e) need[e] = std::max<std::int64_t>(1, to_i64(ceil_div(threshold / inst.growth[e])));
    const auto order = rf_scan_order(inst, cfg.tie_order);

    std::vector<std::int64_t> last(m, -1), best(m, 0), best_day(m, -1);
    std::vector<std::int64_t> busy(g.num_people(), -1);
    tr.schedule_prefix.resize(static_cast<std::size_t>(cfg.horizon));
    for (std::int64_t t = 0; t < cfg.horizon; ++t) {
        auto& today = tr.schedule_prefix[t];
        for (int e : order) {
            const std::int64_t d = t - last[e];
            if (d < need[e]) continue;
            const Edge& ed = g.edge(e);
            if (busy[ed.u] == t || busy[ed.v] == t) continue;
            busy[ed.u] = busy[ed.v] = t;
            today.push_back(e);
            if (d > best[e]) best[e] = d, best_day[e] = t;
            last[e] = t;
        }
        std::sort(today.begin(), today.end());
    }
    for (int e = 0; e < m; ++e) {
        const std::int64_t d = cfg.horizon - 1 - last[e];
        if (d > best[e]) best[e] = d, best_day[e] = cfg.horizon - 1;
        tr.heats_final.push_back(inst.growth[e] * d);
    }
    for (int e = 0; e < m; ++e) {
        Rational h = inst.growth[e] * best[e];
        if (tr.edge_of_max < 0 || h > tr.max_heat_seen || (h == tr.max_heat_seen && best_day[e] < tr.day_of_max)) {
            tr.max_heat_seen = h;
            tr.day_of_max = best_day[e];
            tr.edge_of_max = e;
        }
    }
    return tr;
}

// Algorithm PolyGreedy. Hypotheses: power-of-two frequencies and local
// density at most 1/2 at every person.
inline Schedule polygreedy(const DpsInstance& inst) {
    const int m = inst.num_edges();
    for (int e = 0; e < m; ++e)
        if (!is_power_of_two(inst.freq[e]))
            throw PreconditionError("power-of-two frequencies",
                                    "edge " + std::to_string(e) + " has frequency " + std::to_string(inst.freq[e]));
    auto dens = local_density(inst);
    if (dens.max > Rational(1, 2))
        throw PreconditionError("local density at most 1/2", "maximum local density is " + to_string(dens.max));
    if (m == 0) return Schedule({{}});

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inst.freq[a] < inst.freq[b]; });
    const std::int64_t fmax = inst.freq[order.back()];

    const Graph& g = inst.graph;
    std::vector<std::vector<int>> days(static_cast<std::size_t>(fmax));
    // busy[t][v]: person v already meets someone on day t
    std::vector<std::vector<char>> busy(static_cast<std::size_t>(fmax), std::vector<char>(g.num_people(), 0));
    for (int e : order) {
        const Edge& ed = g.edge(e);
        const std::int64_t f = inst.freq[e];
        std::int64_t s = 0;
        while (s < fmax && (busy[s][ed.u] || busy[s][ed.v])) ++s;
        if (s >= f) throw InternalError("PolyGreedy found no conflict-free slot below f");
        for (std::int64_t t = s; t < fmax; t += f) {
            if (busy[t][ed.u] || busy[t][ed.v]) throw InternalError("PolyGreedy repeat slot conflicts");
            busy[t][ed.u] = busy[t][ed.v] = 1;
            days[t].push_back(e);
        }
    }
    for (auto& d : days) std::sort(d.begin(), d.end());
    return Schedule(std::move(days));
}

// Rounds frequencies down to powers of two and runs PolyGreedy; valid for the
// original frequencies since rounding only tightens them.
inline Schedule schedule_low_density(const DpsInstance& inst) {
    auto dens = local_density(inst);
    if (dens.max > Rational(1, 4))
        throw PreconditionError("local density at most 1/4", "maximum local density is " + to_string(dens.max));
    std::vector<std::int64_t> f;
    for (auto x : inst.freq) f.push_back(floor_pow2(x));
    Schedule s = polygreedy(DpsInstance(inst.graph, std::move(f)));
    if (!validate_dps(s, inst).empty()) throw InternalError("rounded schedule invalid for the original frequencies");
    return s;
}

// Even days replay the first C days of the arbitrary schedule, odd days the
// colour classes. Period 2C.
inline Schedule compact(const OpsInstance& inst, const std::vector<std::vector<int>>& arbitrary) {
    const Graph& g = inst.graph;
    if (inst.num_edges() == 0) throw InvalidInput("instance has no edges");
    const EdgeColoring col = color_edges(g);
    const std::size_t C = static_cast<std::size_t>(col.num_colors);
    if (arbitrary.size() < C)
        throw InvalidInput("arbitrary schedule has " + std::to_string(arbitrary.size()) + " days, fewer than C = " +
                           std::to_string(C));
    Schedule sa(arbitrary);
    HeatReport ha = heat(sa, inst);
    if (ha.infinite()) throw InvalidInput("arbitrary schedule never schedules some edge");

    Schedule sc = color_schedule(g, col);
    std::vector<std::vector<int>> days;
    for (std::size_t t = 0; t < C; ++t) {
        days.push_back(arbitrary[t]);
        days.push_back(sc.days[t]);
    }
    for (auto& d : days) std::sort(d.begin(), d.end());
    Schedule out(std::move(days));
    HeatReport hp = heat(out, inst);
    if (hp.infinite() || *hp.heat > 4 * *ha.heat) throw InternalError("compaction exceeded four times the input heat");
    return out;
}

}  // namespace polysched
