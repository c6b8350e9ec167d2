#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polysched/error.hpp"
#include "polysched/rational.hpp"

namespace polysched {

struct Person {
    int id = 0;
    std::optional<std::string> label;

    friend bool operator==(const Person&, const Person&) = default;
};

// Endpoints are stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;
    int index = 0;

    int other(int w) const { return w == u ? v : u; }
    bool touches(int w) const { return w == u || w == v; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
public:
    Graph() = default;

    Graph(std::vector<Person> people, const std::vector<std::pair<int, int>>& endpoints)
        : people_(std::move(people)) {
        for (std::size_t i = 0; i < people_.size(); ++i)
            if (people_[i].id != static_cast<int>(i))
                throw InvalidInput("person ids must be dense 0..n-1");
        adj_.resize(people_.size());
        std::set<std::pair<int, int>> seen;
        for (auto [a, b] : endpoints) {
            int n = num_people();
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw InvalidInput("edge endpoint out of range");
            if (a == b) throw InvalidInput("self-loop on person " + std::to_string(a));
            if (a > b) std::swap(a, b);
            if (!seen.insert({a, b}).second)
                throw InvalidInput("parallel edge " + std::to_string(a) + "-" + std::to_string(b));
            int idx = static_cast<int>(edges_.size());
            edges_.push_back({a, b, idx});
            adj_[a].push_back(idx);
            adj_[b].push_back(idx);
        }
    }

    // Unlabelled people 0..n-1.
    static Graph of_size(int n, const std::vector<std::pair<int, int>>& endpoints) {
        std::vector<Person> ps;
        for (int i = 0; i < n; ++i) ps.push_back({i, std::nullopt});
        return Graph(std::move(ps), endpoints);
    }

    int num_people() const { return static_cast<int>(people_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Person>& people() const { return people_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_.at(e); }
    const std::vector<int>& incident(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

    int max_degree() const {
        int d = 0;
        for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
        return d;
    }

    bool adjacent(int e, int f) const {
        const Edge &a = edges_[e], &b = edges_[f];
        return e != f && (a.touches(b.u) || a.touches(b.v));
    }

    std::vector<std::pair<int, int>> endpoint_pairs() const {
        std::vector<std::pair<int, int>> out;
        for (const auto& e : edges_) out.emplace_back(e.u, e.v);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.people_ == b.people_ && a.edges_ == b.edges_;
    }

private:
    std::vector<Person> people_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

struct OpsInstance {
    Graph graph;
    std::vector<Rational> growth;

    OpsInstance() = default;
    OpsInstance(Graph g, std::vector<Rational> gr) : graph(std::move(g)), growth(std::move(gr)) {
        if (growth.size() != static_cast<std::size_t>(graph.num_edges()))
            throw InvalidInput("one growth rate per edge required");
        for (const auto& x : growth)
            if (x <= 0) throw InvalidInput("growth rates must be positive");
    }

    int num_edges() const { return graph.num_edges(); }
    friend bool operator==(const OpsInstance&, const OpsInstance&) = default;
};

struct DpsInstance {
    Graph graph;
    std::vector<std::int64_t> freq;

    DpsInstance() = default;
    DpsInstance(Graph g, std::vector<std::int64_t> f) : graph(std::move(g)), freq(std::move(f)) {
        if (freq.size() != static_cast<std::size_t>(graph.num_edges()))
            throw InvalidInput("one frequency per edge required");
        for (auto x : freq)
            if (x < 1) throw InvalidInput("frequencies must be at least 1");
    }

    int num_edges() const { return graph.num_edges(); }
    friend bool operator==(const DpsInstance&, const DpsInstance&) = default;
};

// Repeated forever: S(t) = days[t mod period].
struct Schedule {
    std::vector<std::vector<int>> days;

    Schedule() = default;
    explicit Schedule(std::vector<std::vector<int>> d) : days(std::move(d)) {}
    Schedule(std::initializer_list<std::vector<int>> d) : days(d) {}

    std::int64_t period() const { return static_cast<std::int64_t>(days.size()); }
    const std::vector<int>& at(std::int64_t t) const { return days[static_cast<std::size_t>(t % period())]; }
    friend bool operator==(const Schedule&, const Schedule&) = default;
};

// nullopt means the edge never occurs.
using Recurrence = std::optional<std::int64_t>;

inline bool is_matching(const Graph& g, const std::vector<int>& day) {
    std::vector<int> used;
    for (int e : day) {
        if (e < 0 || e >= g.num_edges()) return false;
        used.push_back(g.edge(e).u);
        used.push_back(g.edge(e).v);
    }
    std::sort(used.begin(), used.end());
    return std::adjacent_find(used.begin(), used.end()) == used.end();
}

inline std::vector<Recurrence> recurrence_times(const Schedule& s, int num_edges) {
    if (s.period() == 0) throw InvalidInput("schedule has period 0");
    std::vector<std::int64_t> first(num_edges, -1), last(num_edges, -1), gap(num_edges, 0);
    for (std::int64_t t = 0; t < s.period(); ++t) {
        for (int e : s.days[t]) {
            if (e < 0 || e >= num_edges) throw InvalidInput("unknown edge index " + std::to_string(e));
            if (last[e] == t) continue;
            if (first[e] < 0) first[e] = t;
            else gap[e] = std::max(gap[e], t - last[e]);
            last[e] = t;
        }
    }
    std::vector<Recurrence> out(num_edges);
    for (int e = 0; e < num_edges; ++e)
        if (first[e] >= 0) out[e] = std::max(gap[e], first[e] + s.period() - last[e]);
    return out;
}

inline Recurrence recurrence_time(const Schedule& s, const Graph& g, int e) {
    if (e < 0 || e >= g.num_edges()) throw InvalidInput("unknown edge index " + std::to_string(e));
    return recurrence_times(s, g.num_edges())[e];
}

struct EdgeHeat {
    Recurrence recurrence;
    std::optional<Rational> contribution;  // g(e)*r, nullopt if infinite
};

struct HeatReport {
    std::optional<Rational> heat;  // nullopt if some edge never occurs
    std::vector<EdgeHeat> per_edge;

    bool infinite() const { return !heat.has_value(); }
};

inline void check_matchings(const Schedule& s, const Graph& g) {
    for (std::int64_t t = 0; t < s.period(); ++t)
        if (!is_matching(g, s.days[t]))
            throw ValidationError("day " + std::to_string(t) + " is not a matching of the instance");
}

inline HeatReport heat(const Schedule& s, const OpsInstance& inst) {
    check_matchings(s, inst.graph);
    auto rs = recurrence_times(s, inst.num_edges());
    HeatReport rep;
    rep.heat = Rational(0);
    for (int e = 0; e < inst.num_edges(); ++e) {
        EdgeHeat eh{rs[e], std::nullopt};
        if (rs[e]) {
            eh.contribution = inst.growth[e] * *rs[e];
            if (rep.heat && *eh.contribution > *rep.heat) rep.heat = *eh.contribution;
        } else {
            rep.heat.reset();
        }
        rep.per_edge.push_back(std::move(eh));
    }
    return rep;
}

struct Violation {
    enum class Kind { EmptySchedule, UnknownEdge, Conflict, Missing, Frequency };
    Kind kind;
    std::int64_t day = -1;
    int edge = -1;
    int other = -1;           // the clashing edge for Conflict
    std::int64_t value = -1;  // recurrence for Frequency

    std::string message() const {
        switch (kind) {
        case Kind::EmptySchedule: return "schedule has period 0";
        case Kind::UnknownEdge: return "day " + std::to_string(day) + ": unknown edge " + std::to_string(edge);
        case Kind::Conflict:
            return "day " + std::to_string(day) + ": edges " + std::to_string(edge) + " and " +
                   std::to_string(other) + " share a person";
        case Kind::Missing: return "edge " + std::to_string(edge) + " is never scheduled";
        case Kind::Frequency:
            return "edge " + std::to_string(edge) + " recurs every " + std::to_string(value) +
                   " days, above its frequency";
        }
        return "?";
    }
};

inline std::vector<Violation> validate_dps(const Schedule& s, const DpsInstance& inst) {
    using K = Violation::Kind;
    std::vector<Violation> out;
    if (s.period() == 0) return {{K::EmptySchedule}};
    const Graph& g = inst.graph;
    bool unknown = false;
    std::vector<int> owner(g.num_people(), -1);
    for (std::int64_t t = 0; t < s.period(); ++t) {
        std::fill(owner.begin(), owner.end(), -1);
        for (int e : s.days[t]) {
            if (e < 0 || e >= g.num_edges()) {
                out.push_back({K::UnknownEdge, t, e});
                unknown = true;
                continue;
            }
            for (int w : {g.edge(e).u, g.edge(e).v}) {
                if (owner[w] >= 0 && owner[w] != e) out.push_back({K::Conflict, t, owner[w], e});
                owner[w] = e;
            }
        }
    }
    if (unknown) return out;
    auto rs = recurrence_times(s, g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        if (!rs[e]) out.push_back({K::Missing, -1, e});
        else if (*rs[e] > inst.freq[e]) out.push_back({K::Frequency, -1, e, -1, *rs[e]});
    }
    return out;
}

inline std::vector<Rational> person_growth(const OpsInstance& inst) {
    std::vector<Rational> gv(inst.graph.num_people(), Rational(0));
    for (const auto& e : inst.graph.edges()) {
        gv[e.u] += inst.growth[e.index];
        gv[e.v] += inst.growth[e.index];
    }
    return gv;
}

inline Rational gstar(const OpsInstance& inst) {
    if (inst.num_edges() == 0) throw InvalidInput("gstar of an instance without edges");
    auto gv = person_growth(inst);
    return *std::max_element(gv.begin(), gv.end());
}

inline Rational max_growth(const OpsInstance& inst) {
    if (inst.num_edges() == 0) throw InvalidInput("instance has no edges");
    return *std::max_element(inst.growth.begin(), inst.growth.end());
}

// Returns the instance scaled to gstar 1, and the divisor used.
inline std::pair<OpsInstance, Rational> normalize(const OpsInstance& inst) {
    Rational scale = gstar(inst);
    std::vector<Rational> g = inst.growth;
    for (auto& x : g) x /= scale;
    return {OpsInstance(inst.graph, std::move(g)), scale};
}

struct LocalDensity {
    std::vector<Rational> per_person;
    Rational max{0};
};

inline LocalDensity local_density(const DpsInstance& inst) {
    LocalDensity d;
    d.per_person.assign(inst.graph.num_people(), Rational(0));
    for (const auto& e : inst.graph.edges()) {
        Rational w(1, inst.freq[e.index]);
        d.per_person[e.u] += w;
        d.per_person[e.v] += w;
    }
    for (const auto& x : d.per_person) d.max = std::max(d.max, x);
    return d;
}

// Heat profile of a finite day sequence started from all-zero heat,
// the convention used by the online simulation.
struct PrefixHeat {
    Rational max_heat{0};
    std::int64_t day = -1;
    int edge = -1;
    std::vector<Rational> final_heat;
};

inline PrefixHeat prefix_heat(const std::vector<std::vector<int>>& days, const OpsInstance& inst) {
    const int m = inst.num_edges();
    std::vector<std::int64_t> last(m, -1), best(m, 0), best_day(m, -1);
    const std::int64_t horizon = static_cast<std::int64_t>(days.size());
    for (std::int64_t t = 0; t < horizon; ++t) {
        if (!is_matching(inst.graph, days[t]))
            throw ValidationError("day " + std::to_string(t) + " is not a matching of the instance");
        for (int e : days[t]) {
            if (t - last[e] > best[e]) best[e] = t - last[e], best_day[e] = t;
            last[e] = t;
        }
    }
    PrefixHeat out;
    for (int e = 0; e < m; ++e) {
        std::int64_t d = horizon - 1 - last[e];
        if (d > best[e]) best[e] = d, best_day[e] = horizon - 1;
        out.final_heat.push_back(inst.growth[e] * d);
    }
    for (int e = 0; e < m; ++e) {
        Rational h = inst.growth[e] * best[e];
        if (out.edge < 0 || h > out.max_heat || (h == out.max_heat && best_day[e] < out.day)) {
            out.max_heat = h;
            out.day = best_day[e];
            out.edge = e;
        }
    }
    return out;
}

}  // namespace polysched
