#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "polysched/core.hpp"
#include "polysched/slots.hpp"

namespace polysched {

// A piece of a polycule. Internal people meet at most one partner per day;
// the far ends of boundary edges are unconstrained. pins[e] == 0 leaves
// edge e free, otherwise it may only use days of the listed colours.
struct LocalGadget {
    DpsInstance inst;
    std::vector<char> internal;
    std::vector<ColorMask> pins;
};

// Day sets per edge as bit masks over [0, period).
struct LocalSchedule {
    std::vector<std::uint64_t> days;

    friend bool operator==(const LocalSchedule&, const LocalSchedule&) = default;
    friend bool operator<(const LocalSchedule& a, const LocalSchedule& b) { return a.days < b.days; }
};

inline std::vector<int> days_of(std::uint64_t mask) {
    std::vector<int> out;
    for (int t = 0; mask; ++t, mask >>= 1)
        if (mask & 1) out.push_back(t);
    return out;
}

// Colour of every day an edge uses, or 0 if the days mix colours.
inline ColorMask colors_used(std::uint64_t mask) {
    ColorMask m = 0;
    for (int t : days_of(mask)) m |= mask_of(slot_color(t));
    return m;
}

namespace detail {

class LocalSearch {
public:
    LocalSearch(const LocalGadget& g, int period, std::uint64_t budget) : g_(g), P_(period), budget_(budget) {
        const int m = g.inst.num_edges();
        allowed_.assign(m, 0);
        need_.assign(m, 0);
        for (int e = 0; e < m; ++e) {
            const ColorMask pin = g.pins.empty() ? 0 : g.pins[e];
            for (int t = 0; t < P_; ++t)
                if (pin == 0 || allows(pin, slot_color(t))) allowed_[e] |= std::uint64_t{1} << t;
            const std::int64_t f = g.inst.freq[e];
            need_[e] = static_cast<int>((P_ + f - 1) / f);
        }
        occupied_.assign(g.inst.graph.num_people(), 0);
        pending_.assign(g.inst.graph.num_people(), 0);
        for (const auto& ed : g.inst.graph.edges())
            for (int w : {ed.u, ed.v})
                if (g.internal[w]) pending_[w] += need_[ed.index];
        order_.resize(m);
        for (int e = 0; e < m; ++e) order_[e] = e;
        // pinned edges, then short frequencies, then index
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            const bool pa = !g.pins.empty() && g.pins[a], pb = !g.pins.empty() && g.pins[b];
            if (pa != pb) return pa;
            return g.inst.freq[a] < g.inst.freq[b];
        });
        assign_.assign(m, 0);
    }

    std::vector<LocalSchedule> run() {
        search(0);
        return out_;
    }

private:
    void tick() {
        if (++nodes_ > budget_) throw Refused("local schedule enumeration exceeded its search budget");
    }

    int free_days(int w) const { return P_ - std::popcount(occupied_[w]); }

    void search(std::size_t i) {
        tick();
        if (i == order_.size()) {
            out_.push_back({assign_});
            return;
        }
        const int e = order_[i];
        const Edge& ed = g_.inst.graph.edge(e);
        std::uint64_t avail = allowed_[e];
        int maxcount = P_;
        for (int w : {ed.u, ed.v}) {
            if (!g_.internal[w]) continue;
            avail &= ~occupied_[w];
            maxcount = std::min(maxcount, free_days(w) - (pending_[w] - need_[e]));
        }
        if (maxcount < need_[e]) return;
        for (int w : {ed.u, ed.v})
            if (g_.internal[w]) pending_[w] -= need_[e];
        candidates(e, avail, maxcount, [&](std::uint64_t mask) {
            for (int w : {ed.u, ed.v})
                if (g_.internal[w]) occupied_[w] |= mask;
            bool ok = true;
            for (int w : {ed.u, ed.v})
                if (g_.internal[w] && free_days(w) < pending_[w]) ok = false;
            if (ok) {
                assign_[e] = mask;
                search(i + 1);
                assign_[e] = 0;
            }
            for (int w : {ed.u, ed.v})
                if (g_.internal[w]) occupied_[w] &= ~mask;
        });
        for (int w : {ed.u, ed.v})
            if (g_.internal[w]) pending_[w] += need_[e];
    }

    // Every day set within avail whose cyclic gaps are all <= f.
    template <class F>
    void candidates(int e, std::uint64_t avail, int maxcount, F&& emit) {
        const int f = static_cast<int>(std::min<std::int64_t>(g_.inst.freq[e], P_));
        std::function<void(std::uint64_t, int, int, int)> extend = [&](std::uint64_t mask, int first, int last,
                                                                          int count) {
            tick();
            if (first + P_ - last <= f) emit(mask);
            if (count == maxcount) return;
            for (int t = last + 1; t <= std::min(last + f, P_ - 1); ++t)
                if (avail >> t & 1) extend(mask | (std::uint64_t{1} << t), first, t, count + 1);
        };
        for (int d0 = 0; d0 < f; ++d0)
            if (avail >> d0 & 1) extend(std::uint64_t{1} << d0, d0, d0, 1);
    }

    const LocalGadget& g_;
    const int P_;
    const std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<std::uint64_t> allowed_;
    std::vector<int> need_;
    std::vector<std::uint64_t> occupied_;
    std::vector<int> pending_;
    std::vector<int> order_;
    std::vector<std::uint64_t> assign_;
    std::vector<LocalSchedule> out_;
};

}  // namespace detail

// All periodic local schedules of the given period: no internal person twice
// on a day, every edge recurring within its frequency, pinned edges only on
// days of their colour.
inline std::vector<LocalSchedule> enumerate_local_schedules(const LocalGadget& g, int period = 36,
                                                            std::uint64_t budget = 200'000'000) {
    if (period <= 0 || period > 64 || period % 6 != 0)
        throw InvalidInput("local schedule period must be a positive multiple of 6 and at most 64");
    for (auto f : g.inst.freq)
        if (period % f != 0) throw InvalidInput("local schedule period must be a multiple of every frequency");
    if (g.internal.size() != static_cast<std::size_t>(g.inst.graph.num_people()))
        throw InvalidInput("internal flags must cover every person");
    if (!g.pins.empty() && g.pins.size() != static_cast<std::size_t>(g.inst.num_edges()))
        throw InvalidInput("pins must cover every edge");
    return detail::LocalSearch(g, period, budget).run();
}

}  // namespace polysched
