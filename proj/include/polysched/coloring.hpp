#pragma once

#include <vector>

#include "polysched/core.hpp"

namespace polysched {

struct EdgeColoring {
    std::vector<int> colors;  // colors[e] in [0, num_colors)
    int num_colors = 0;
};

inline bool is_proper(const Graph& g, const EdgeColoring& c) {
    if (c.colors.size() != static_cast<std::size_t>(g.num_edges())) return false;
    for (int v = 0; v < g.num_people(); ++v) {
        std::vector<char> seen(c.num_colors, 0);
        for (int e : g.incident(v)) {
            int k = c.colors[e];
            if (k < 0 || k >= c.num_colors || seen[k]) return false;
            seen[k] = 1;
        }
    }
    return true;
}

// Misra-Gries fan rotation: at most max_degree + 1 colours. Colour ids
// are compacted afterwards so that every colour in [0, C) is used.
inline EdgeColoring color_edges(const Graph& g) {
    const int n = g.num_people(), m = g.num_edges();
    const int palette = g.max_degree() + 1;
    std::vector<int> color(m, -1);
    std::vector<std::vector<int>> at(n, std::vector<int>(palette, -1));

    auto is_free = [&](int v, int c) { return at[v][c] < 0; };
    auto first_free = [&](int v) {
        for (int c = 0; c < palette; ++c)
            if (is_free(v, c)) return c;
        throw InternalError("no free colour at a vertex");
    };
    auto paint = [&](int e, int c) {
        const Edge& ed = g.edge(e);
        if (color[e] >= 0) at[ed.u][color[e]] = at[ed.v][color[e]] = -1;
        color[e] = c;
        if (c >= 0) at[ed.u][c] = at[ed.v][c] = e;
    };
    auto edge_between = [&](int u, int v) {
        for (int e : g.incident(u))
            if (g.edge(e).other(u) == v) return e;
        throw InternalError("fan vertex is not a neighbour");
    };

    std::vector<char> in_fan(n, 0);
    for (int e0 = 0; e0 < m; ++e0) {
        const int u = g.edge(e0).u;
        std::vector<int> fan{g.edge(e0).v};
        in_fan[fan[0]] = 1;
        for (bool grew = true; grew;) {
            grew = false;
            for (int e : g.incident(u)) {
                int w = g.edge(e).other(u);
                if (in_fan[w] || color[e] < 0 || !is_free(fan.back(), color[e])) continue;
                fan.push_back(w);
                in_fan[w] = 1;
                grew = true;
                break;
            }
        }
        for (int w : fan) in_fan[w] = 0;

        const int c = first_free(u), d = first_free(fan.back());
        if (c != d) {
            std::vector<int> path;
            for (int x = u, col = d;;) {
                int e = at[x][col];
                if (e < 0) break;
                path.push_back(e);
                x = g.edge(e).other(x);
                col = col == d ? c : d;
            }
            std::vector<int> old;
            for (int e : path) old.push_back(color[e]), paint(e, -1);
            for (std::size_t i = 0; i < path.size(); ++i) paint(path[i], old[i] == c ? d : c);
        }

        std::size_t w = fan.size();
        for (std::size_t i = 0; i < fan.size(); ++i) {
            if (i > 0) {
                int e = edge_between(u, fan[i]);
                if (color[e] < 0 || !is_free(fan[i - 1], color[e])) break;
            }
            if (is_free(fan[i], d)) {
                w = i;
                break;
            }
        }
        if (w == fan.size()) throw InternalError("fan rotation failed");
        for (std::size_t i = 0; i < w; ++i) {
            int next = edge_between(u, fan[i + 1]);
            int cn = color[next];
            paint(next, -1);
            paint(edge_between(u, fan[i]), cn);
        }
        paint(edge_between(u, fan[w]), d);
    }

    std::vector<int> remap(palette, -1);
    EdgeColoring out;
    for (int k = 0; k < palette; ++k)
        for (int e = 0; e < m; ++e)
            if (color[e] == k) {
                remap[k] = out.num_colors++;
                break;
            }
    for (int e = 0; e < m; ++e) out.colors.push_back(remap[color[e]]);
    if (!is_proper(g, out)) throw InternalError("edge colouring is not proper");
    return out;
}

// Day t is colour class t; every edge recurs every C days.
inline Schedule color_schedule(const Graph& g, const EdgeColoring& c) {
    if (!is_proper(g, c)) throw InvalidInput("colouring is not proper");
    std::vector<std::vector<int>> days(c.num_colors);
    for (int e = 0; e < g.num_edges(); ++e) days[c.colors[e]].push_back(e);
    return Schedule(std::move(days));
}

inline Schedule colored_round_robin(const Graph& g) { return color_schedule(g, color_edges(g)); }

}  // namespace polysched
