#pragma once

#include "polysched/core.hpp"

namespace polysched {

// f_e = floor(h / g(e)), the largest frequency whose schedules keep heat <= h.
inline DpsInstance ops_to_dps(const OpsInstance& inst, const Rational& h) {
    if (h <= 0) throw InvalidInput("target heat must be positive");
    if (inst.num_edges() > 0 && h < max_growth(inst))
        throw InvalidInput("target heat unreachable in one day: h < max growth rate");
    std::vector<std::int64_t> f;
    f.reserve(inst.growth.size());
    for (const auto& g : inst.growth) f.push_back(to_i64(floor_div(h / g)));
    return DpsInstance(inst.graph, std::move(f));
}

inline OpsInstance dps_to_ops(const DpsInstance& inst) {
    std::vector<Rational> g;
    g.reserve(inst.freq.size());
    for (auto f : inst.freq) g.emplace_back(1, f);
    return OpsInstance(inst.graph, std::move(g));
}

}  // namespace polysched
