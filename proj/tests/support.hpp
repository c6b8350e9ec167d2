#pragma once

// Small fixtures and brute-force reference checks shared by the unit tests.

#include <cstdint>
#include <optional>
#include <vector>

#include "polysched/core.hpp"

namespace fixtures {

using namespace polysched;

inline Graph star_graph(int k) {
    std::vector<std::pair<int, int>> es;
    for (int i = 1; i <= k; ++i) es.emplace_back(0, i);
    return Graph::of_size(k + 1, es);
}

inline Graph path_graph(int edges) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < edges; ++i) es.emplace_back(i, i + 1);
    return Graph::of_size(edges + 1, es);
}

inline Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph::of_size(n, es);
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return Graph::of_size(n, es);
}

inline std::vector<Rational> rats(std::initializer_list<std::pair<long, long>> xs) {
    std::vector<Rational> out;
    for (auto [a, b] : xs) out.emplace_back(a, b);
    return out;
}

inline std::vector<Rational> uniform(int m, Rational g) { return std::vector<Rational>(m, g); }

// Scan forward from every occurrence until the next one, over one period.
inline std::optional<std::int64_t> unrolled_recurrence(const Schedule& s, int e) {
    const std::int64_t T = s.period();
    auto has = [&](std::int64_t t) {
        for (int x : s.days[t % T])
            if (x == e) return true;
        return false;
    };
    std::optional<std::int64_t> best;
    for (std::int64_t p = 0; p < T; ++p) {
        if (!has(p)) continue;
        std::int64_t q = p + 1;
        while (!has(q)) ++q;
        if (!best || q - p > *best) best = q - p;
    }
    return best;
}

// Every window of f_e consecutive days (periodically) contains e, and days are matchings.
inline bool window_valid(const Schedule& s, const DpsInstance& inst) {
    const std::int64_t T = s.period();
    if (T == 0) return false;
    for (std::int64_t t = 0; t < T; ++t) {
        std::vector<int> seen(inst.graph.num_people(), 0);
        for (int e : s.days[t]) {
            if (e < 0 || e >= inst.num_edges()) return false;
            if (seen[inst.graph.edge(e).u]++ || seen[inst.graph.edge(e).v]++) return false;
        }
    }
    for (int e = 0; e < inst.num_edges(); ++e)
        for (std::int64_t t = 0; t < T; ++t) {
            bool hit = false;
            for (std::int64_t k = 0; k < inst.freq[e] && !hit; ++k)
                for (int x : s.days[(t + k) % T])
                    if (x == e) hit = true;
            if (!hit) return false;
        }
    return true;
}

}  // namespace fixtures
