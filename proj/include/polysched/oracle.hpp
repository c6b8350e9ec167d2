#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polysched/coloring.hpp"
#include "polysched/converters.hpp"
#include "polysched/core.hpp"

namespace polysched {

inline constexpr std::uint64_t kDefaultStateGuard = 5'000'000;

// Connected components as edge lists, people without edges dropped.
inline std::vector<std::vector<int>> edge_components(const Graph& g) {
    std::vector<int> comp(g.num_people(), -1);
    int k = 0;
    for (int s = 0; s < g.num_people(); ++s) {
        if (comp[s] >= 0 || g.degree(s) == 0) continue;
        std::vector<int> stack{s};
        comp[s] = k;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e : g.incident(v)) {
                int w = g.edge(e).other(v);
                if (comp[w] < 0) comp[w] = k, stack.push_back(w);
            }
        }
        ++k;
    }
    std::vector<std::vector<int>> out(k);
    for (const auto& e : g.edges()) out[comp[e.u]].push_back(e.index);
    return out;
}

// The sub-graph spanned by `edges`, people renumbered densely. Edge i of the
// result is edges[i] of the original.
inline Graph edge_subgraph(const Graph& g, const std::vector<int>& edges) {
    std::vector<int> id(g.num_people(), -1);
    std::vector<Person> ps;
    std::vector<std::pair<int, int>> es;
    auto map = [&](int v) {
        if (id[v] < 0) {
            id[v] = static_cast<int>(ps.size());
            ps.push_back({id[v], g.people()[v].label});
        }
        return id[v];
    };
    for (int e : edges) {
        int a = map(g.edge(e).u);
        int b = map(g.edge(e).v);
        es.emplace_back(a, b);
    }
    return Graph(std::move(ps), es);
}

struct FeasibilityResult {
    enum class Status { Feasible, Infeasible, Refused };
    Status status = Status::Refused;
    std::optional<Schedule> schedule;
    std::uint64_t states_explored = 0;
    std::string reason;

    bool feasible() const { return status == Status::Feasible; }
};

namespace detail {

// Product of (f_e + 1), saturating at guard + 1.
inline std::uint64_t guarded_product(const std::vector<std::int64_t>& f, std::uint64_t guard) {
    std::uint64_t p = 1;
    for (auto x : f) {
        const std::uint64_t k = static_cast<std::uint64_t>(x) + 1;
        if (p > (guard + 1) / k) return guard + 1;
        p *= k;
    }
    return p;
}

// One connected component. State: per edge the number of consecutive days
// it has been skipped, in [0, f_e - 1]. A reachable cycle of the transition
// graph is a valid periodic schedule; depth-first search finds one iff it exists.
inline FeasibilityResult feasible_component(const DpsInstance& inst, std::uint64_t guard) {
    const int m = inst.num_edges();
    FeasibilityResult res;
    if (guarded_product(inst.freq, guard) > guard) {
        res.status = FeasibilityResult::Status::Refused;
        res.reason = "state space prod(f_e + 1) exceeds the guard of " + std::to_string(guard);
        return res;
    }
    if (m > 62) throw Refused("component too large for the feasibility oracle");

    // every matching, largest first
    std::vector<std::uint64_t> actions;
    {
        std::vector<int> used(inst.graph.num_people(), 0);
        std::function<void(int, std::uint64_t)> go = [&](int e, std::uint64_t mask) {
            if (e == m) {
                actions.push_back(mask);
                return;
            }
            const Edge& ed = inst.graph.edge(e);
            if (!used[ed.u] && !used[ed.v]) {
                used[ed.u] = used[ed.v] = 1;
                go(e + 1, mask | (std::uint64_t{1} << e));
                used[ed.u] = used[ed.v] = 0;
            }
            go(e + 1, mask);
        };
        go(0, 0);
        std::stable_sort(actions.begin(), actions.end(),
                         [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) > std::popcount(b); });
    }

    std::vector<std::uint64_t> radix(m);
    std::uint64_t states = 1;
    for (int e = 0; e < m; ++e) {
        radix[e] = states;
        states *= static_cast<std::uint64_t>(inst.freq[e]);
    }
    std::vector<int> w(m);
    auto decode = [&](std::uint64_t s) {
        for (int e = 0; e < m; ++e) w[e] = static_cast<int>((s / radix[e]) % static_cast<std::uint64_t>(inst.freq[e]));
    };
    // Successor under `mask`, or states if some overdue edge is skipped.
    auto step = [&](std::uint64_t s, std::uint64_t mask) {
        decode(s);
        std::uint64_t t = 0;
        for (int e = 0; e < m; ++e) {
            if (mask >> e & 1) continue;
            if (w[e] + 1 >= inst.freq[e]) return states;
            t += static_cast<std::uint64_t>(w[e] + 1) * radix[e];
        }
        return t;
    };

    enum : std::uint8_t { White, Grey, Black };
    std::vector<std::uint8_t> colour(states, White);
    struct Frame {
        std::uint64_t state;
        std::uint32_t next;
    };
    std::vector<Frame> stack{{0, 0}};
    colour[0] = Grey;
    res.states_explored = 1;
    while (!stack.empty()) {
        Frame& fr = stack.back();
        if (fr.next == actions.size()) {
            colour[fr.state] = Black;
            stack.pop_back();
            continue;
        }
        const std::uint64_t mask = actions[fr.next++];
        const std::uint64_t t = step(fr.state, mask);
        if (t == states || colour[t] == Black) continue;
        if (colour[t] == Grey) {
            std::size_t j = stack.size();
            while (stack[j - 1].state != t) --j;
            std::vector<std::vector<int>> days;
            for (std::size_t i = j - 1; i < stack.size(); ++i) {
                const std::uint64_t a = actions[stack[i].next - 1];
                std::vector<int> day;
                for (int e = 0; e < m; ++e)
                    if (a >> e & 1) day.push_back(e);
                days.push_back(std::move(day));
            }
            res.status = FeasibilityResult::Status::Feasible;
            res.schedule = Schedule(std::move(days));
            return res;
        }
        colour[t] = Grey;
        ++res.states_explored;
        stack.push_back({t, 0});
    }
    res.status = FeasibilityResult::Status::Infeasible;
    return res;
}

}  // namespace detail

// Decides DPS feasibility component by component and merges the component
// schedules over the lcm of their periods. The guard bounds prod(f_e + 1)
// per component.
inline FeasibilityResult dps_feasible(const DpsInstance& inst, std::uint64_t guard = kDefaultStateGuard) {
    FeasibilityResult out;
    if (inst.num_edges() == 0) {
        out.status = FeasibilityResult::Status::Feasible;
        out.schedule = Schedule({{}});
        return out;
    }
    auto comps = edge_components(inst.graph);
    std::vector<std::pair<std::vector<int>, Schedule>> parts;
    bool refused = false;
    std::string reason;
    for (const auto& c : comps) {
        std::vector<std::int64_t> f;
        for (int e : c) f.push_back(inst.freq[e]);
        auto r = detail::feasible_component(DpsInstance(edge_subgraph(inst.graph, c), f), guard);
        out.states_explored += r.states_explored;
        if (r.status == FeasibilityResult::Status::Infeasible) {
            out.status = r.status;
            return out;
        }
        if (r.status == FeasibilityResult::Status::Refused) {
            refused = true;
            reason = r.reason;
            continue;
        }
        parts.emplace_back(c, std::move(*r.schedule));
    }
    if (refused) {
        out.status = FeasibilityResult::Status::Refused;
        out.reason = reason;
        return out;
    }
    std::int64_t T = 1;
    for (const auto& [c, s] : parts) {
        T = std::lcm(T, s.period());
        if (T > 10'000'000) throw Refused("merged schedule period too long");
    }
    std::vector<std::vector<int>> days(static_cast<std::size_t>(T));
    for (std::int64_t t = 0; t < T; ++t) {
        for (const auto& [c, s] : parts)
            for (int e : s.at(t)) days[t].push_back(c[e]);
        std::sort(days[t].begin(), days[t].end());
    }
    out.status = FeasibilityResult::Status::Feasible;
    out.schedule = Schedule(std::move(days));
    if (!validate_dps(*out.schedule, inst).empty()) throw InternalError("oracle produced an invalid schedule");
    return out;
}

namespace detail {

inline Rational optimal_heat_component(const OpsInstance& inst, std::uint64_t guard) {
    const Rational lo = gstar(inst);
    const Rational hi = *heat(colored_round_robin(inst.graph), inst).heat;
    std::vector<Rational> cand;
    for (const auto& g : inst.growth)
        for (BigInt k = ceil_div(lo / g); g * k <= hi; ++k) cand.push_back(g * k);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    // cand.back() == hi is feasible by the round-robin schedule
    std::size_t a = 0, b = cand.size() - 1;
    while (a < b) {
        std::size_t mid = (a + b) / 2;
        auto r = dps_feasible(ops_to_dps(inst, cand[mid]), guard);
        if (r.status == FeasibilityResult::Status::Refused)
            throw Refused("optimal heat search refused at h = " + to_string(cand[mid]) + ": " + r.reason);
        if (r.feasible()) b = mid;
        else a = mid + 1;
    }
    return cand[a];
}

}  // namespace detail

// Least h such that ops_to_dps(inst, h) is feasible. The optimum is always
// g(e)*k for some edge e and integer k.
inline Rational optimal_heat(const OpsInstance& inst, std::uint64_t guard = kDefaultStateGuard) {
    if (inst.num_edges() == 0) throw InvalidInput("instance has no edges");
    Rational best = 0;
    for (const auto& c : edge_components(inst.graph)) {
        std::vector<Rational> g;
        for (int e : c) g.push_back(inst.growth[e]);
        best = std::max(best, detail::optimal_heat_component(OpsInstance(edge_subgraph(inst.graph, c), g), guard));
    }
    return best;
}

}  // namespace polysched
