#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polysched/core.hpp"
#include "polysched/random.hpp"

namespace polysched {

// d disjoint stars; star i has i edges of growth 1/i.
inline OpsInstance gen_disjoint_stars(int d) {
    if (d < 1) throw InvalidInput("star count must be at least 1");
    std::vector<std::pair<int, int>> es;
    std::vector<Rational> g;
    int next = 0;
    for (int i = 1; i <= d; ++i) {
        const int center = next++;
        for (int k = 0; k < i; ++k) {
            es.emplace_back(center, next++);
            g.push_back(frac(1, i));
        }
    }
    return OpsInstance(Graph::of_size(next, es), g);
}

struct AdversarialInstance {
    OpsInstance inst;
    std::vector<int> tie_order;
};

// K_n with growth 1/(n-1). The tie order lists a 1-factorisation of K_{n-1}
// (circle method, matching by matching), then the edges of vertex n-1.
inline AdversarialInstance gen_kn_adversarial(int n) {
    if (n < 3 || n % 2 == 0) throw InvalidInput("n must be odd and at least 3");
    std::vector<std::pair<int, int>> es;
    std::vector<std::vector<int>> id(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            id[i][j] = id[j][i] = static_cast<int>(es.size());
            es.emplace_back(i, j);
        }
    AdversarialInstance out{OpsInstance(Graph::of_size(n, es), std::vector<Rational>(es.size(), frac(1, n - 1))), {}};
    const int k = n - 1;       // vertices 0..k-1 form K_{n-1}
    const int ring = k - 1;    // vertex k-1 is fixed, the rest rotate
    for (int r = 0; r < ring; ++r) {
        out.tie_order.push_back(id[r][k - 1]);
        for (int s = 1; s <= (ring - 1) / 2; ++s) out.tie_order.push_back(id[(r + s) % ring][(r - s + ring) % ring]);
    }
    for (int i = 0; i < k; ++i) out.tie_order.push_back(id[i][k]);
    return out;
}

struct RandomParams {
    int people = 6;
    Rational edge_prob = frac(1, 2);
    // OPS growth rates a/b with 1 <= a <= b <= max_den
    std::int64_t max_den = 6;
    // DPS frequencies in [min_freq, max_freq], optionally powers of two only
    std::int64_t min_freq = 2;
    std::int64_t max_freq = 16;
    bool power_of_two = false;
    // reject DPS draws whose local density exceeds the cap
    std::optional<Rational> density_cap;
    int max_attempts = 1000;
};

namespace detail {

inline void check_params(const RandomParams& p) {
    if (p.people < 2) throw InvalidInput("need at least two people");
    if (p.edge_prob <= 0 || p.edge_prob > 1) throw InvalidInput("edge probability must lie in (0, 1]");
    if (p.max_den < 1) throw InvalidInput("max_den must be positive");
    if (p.min_freq < 1 || p.max_freq < p.min_freq) throw InvalidInput("bad frequency range");
    if (p.power_of_two && floor_pow2(p.max_freq) < p.min_freq) throw InvalidInput("no power of two in the frequency range");
    if (p.max_attempts < 1) throw InvalidInput("max_attempts must be positive");
}

// Random graph with at least one edge.
inline Graph random_graph(Rng& rng, const RandomParams& p) {
    for (;;) {
        std::vector<std::pair<int, int>> es;
        for (int i = 0; i < p.people; ++i)
            for (int j = i + 1; j < p.people; ++j)
                if (rng.bernoulli(p.edge_prob)) es.emplace_back(i, j);
        if (!es.empty()) return Graph::of_size(p.people, es);
    }
}

}  // namespace detail

inline OpsInstance gen_random_ops(std::uint64_t seed, const RandomParams& p = {}) {
    detail::check_params(p);
    Rng rng(seed);
    Graph g = detail::random_graph(rng, p);
    std::vector<Rational> growth;
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto b = rng.uniform(1, p.max_den);
        growth.push_back(frac(rng.uniform(1, b), b));
    }
    return OpsInstance(std::move(g), std::move(growth));
}

inline DpsInstance gen_random_dps(std::uint64_t seed, const RandomParams& p = {}) {
    detail::check_params(p);
    Rng rng(seed);
    std::vector<std::int64_t> choices;
    for (std::int64_t f = p.min_freq; f <= p.max_freq; ++f)
        if (!p.power_of_two || is_power_of_two(f)) choices.push_back(f);
    for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
        Graph g = detail::random_graph(rng, p);
        std::vector<std::int64_t> freq;
        for (int e = 0; e < g.num_edges(); ++e) freq.push_back(rng.pick(choices));
        DpsInstance inst(std::move(g), std::move(freq));
        if (!p.density_cap || local_density(inst).max <= *p.density_cap) return inst;
    }
    throw InvalidInput("density cap " + to_string(*p.density_cap) + " not reached after " +
                       std::to_string(p.max_attempts) + " attempts");
}

}  // namespace polysched
