#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "polysched/converters.hpp"
#include "polysched/core.hpp"
#include "polysched/simplex.hpp"

namespace polysched {

inline constexpr int kDefaultMatchingEdgeLimit = 20;

struct MatchingSet {
    std::vector<std::vector<int>> matchings;  // each sorted; list sorted lexicographically
};

// All inclusion-maximal matchings.
inline MatchingSet enumerate_maximal_matchings(const Graph& g, int edge_limit = kDefaultMatchingEdgeLimit) {
    const int m = g.num_edges();
    if (m > edge_limit)
        throw Refused("matching enumeration refused: " + std::to_string(m) + " edges exceeds the limit of " +
                      std::to_string(edge_limit) + "; use bounds-only mode");
    MatchingSet out;
    std::vector<int> cur;
    std::vector<int> used(g.num_people(), 0);
    std::function<void(int)> go = [&](int e) {
        if (e == m) {
            for (int f = 0; f < m; ++f)
                if (!used[g.edge(f).u] && !used[g.edge(f).v]) return;
            out.matchings.push_back(cur);
            return;
        }
        const Edge& ed = g.edge(e);
        if (!used[ed.u] && !used[ed.v]) {
            used[ed.u] = used[ed.v] = 1;
            cur.push_back(e);
            go(e + 1);
            cur.pop_back();
            used[ed.u] = used[ed.v] = 0;
        }
        go(e + 1);
    };
    go(0);
    std::sort(out.matchings.begin(), out.matchings.end());
    return out;
}

struct DensityReport {
    Rational value{0};                // optimum of the packing LP over weightings z
    Rational primal_value{0};         // optimum of the covering LP over matchings
    std::vector<Rational> witness_z;  // sums to 1
    std::vector<Rational> witness_y;  // per matching, sums to 1
    MatchingSet matchings;
    Rational gstar{0};
    Rational lower{0};
    Rational upper{0};

    bool within_bounds() const { return lower <= value && value <= upper; }
    bool strictly_below_upper() const { return value < upper; }
};

inline std::pair<Rational, Rational> density_bounds(const OpsInstance& inst) {
    Rational g = gstar(inst);
    return {g, Rational(3, 2) * g};
}

namespace detail {

inline DensityReport solve_density(const OpsInstance& inst, int edge_limit) {
    const int m = inst.num_edges();
    if (m == 0) throw InvalidInput("density of an instance without edges");
    DensityReport rep;
    rep.matchings = enumerate_maximal_matchings(inst.graph, edge_limit);
    const auto& ms = rep.matchings.matchings;
    const std::size_t k = ms.size();

    // Packing: max sum z  s.t.  sum_{e in M} z_e / g_e <= 1 for every M.
    LinearProgram pack;
    pack.num_vars = m;
    pack.objective.assign(m, Rational(1));
    for (const auto& M : ms) {
        std::vector<Rational> row(m, Rational(0));
        for (int e : M) row[e] = 1 / inst.growth[e];
        pack.add_row(std::move(row), Sense::LessEq, 1);
    }
    auto pz = solve_lp(pack);
    if (pz.status != LpResult::Status::Optimal) throw InternalError("packing LP not optimal");

    // Covering: min sum y  s.t.  sum_{M containing e} y_M >= g_e.
    LinearProgram cover;
    cover.num_vars = k;
    cover.objective.assign(k, Rational(-1));
    for (int e = 0; e < m; ++e) {
        std::vector<Rational> row(k, Rational(0));
        for (std::size_t i = 0; i < k; ++i)
            if (std::binary_search(ms[i].begin(), ms[i].end(), e)) row[i] = 1;
        cover.add_row(std::move(row), Sense::GreaterEq, inst.growth[e]);
    }
    auto py = solve_lp(cover);
    if (py.status != LpResult::Status::Optimal) throw InternalError("covering LP not optimal");

    rep.value = pz.value;
    rep.primal_value = -py.value;
    if (rep.value != rep.primal_value) throw InternalError("density LPs disagree: duality gap");

    for (const auto& z : pz.x) rep.witness_z.push_back(z / rep.value);
    for (const auto& y : py.x) rep.witness_y.push_back(y / rep.value);

    // The weighting attains the value: min_M 1 / sum_{e in M} z_e/g_e.
    Rational worst = 0;
    for (const auto& M : ms) {
        Rational s = 0;
        for (int e : M) s += rep.witness_z[e] / inst.growth[e];
        worst = std::max(worst, s);
    }
    if (worst == 0 || 1 / worst != rep.value) throw InternalError("weighting witness does not attain the density");
    for (int e = 0; e < m; ++e) {
        Rational s = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (std::binary_search(ms[i].begin(), ms[i].end(), e)) s += rep.witness_y[i];
        if (s * rep.value < inst.growth[e]) throw InternalError("fractional schedule witness leaves an edge short");
    }

    rep.gstar = gstar(inst);
    std::tie(rep.lower, rep.upper) = density_bounds(inst);
    return rep;
}

}  // namespace detail

// Poly density of an OPS instance: max over weightings z of
// min over maximal matchings M of 1 / sum_{e in M} z_e / g(e).
inline DensityReport poly_density_ops(const OpsInstance& inst, int edge_limit = kDefaultMatchingEdgeLimit) {
    return detail::solve_density(inst, edge_limit);
}

// Same LP with coefficients f_e, i.e. growth 1/f_e.
inline DensityReport poly_density_dps(const DpsInstance& inst, int edge_limit = kDefaultMatchingEdgeLimit) {
    return detail::solve_density(dps_to_ops(inst), edge_limit);
}

inline bool is_star(const Graph& g) {
    if (g.num_edges() == 0) return false;
    const Edge& e0 = g.edge(0);
    for (int c : {e0.u, e0.v})
        if (g.degree(c) == g.num_edges()) return true;
    return false;
}

inline Rational star_density(const DpsInstance& inst) {
    if (!is_star(inst.graph)) throw InvalidInput("star_density needs a star graph");
    Rational d = 0;
    for (auto f : inst.freq) d += Rational(1, f);
    return d;
}

}  // namespace polysched
