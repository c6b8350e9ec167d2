#pragma once

// Local schedule families written out directly from the gadget lemmas'
// stated forms, as day sets over a 36-day period. Independent of the
// enumerator they are compared against.

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polysched/gadget_verify.hpp"

namespace families {

using namespace polysched;

constexpr int kPeriod = 36;

// Days t in [0, 36) with t = offset (mod f).
inline std::uint64_t every(int f, int offset) {
    std::uint64_t m = 0;
    for (int t = ((offset % f) + f) % f; t < kPeriod; t += f) m |= std::uint64_t{1} << t;
    return m;
}

// Edge role -> day set, one map per schedule.
using Form = std::map<std::string, std::uint64_t>;

inline std::set<LocalSchedule> as_set(const LocalBuild& lb, const std::vector<Form>& forms) {
    std::set<LocalSchedule> out;
    for (const auto& f : forms) {
        if (f.size() != lb.edge.size()) throw std::logic_error("form does not name every edge");
        LocalSchedule s;
        s.days.assign(lb.gadget.inst.num_edges(), 0);
        for (const auto& [role, days] : f) s.days[lb[role]] = days;
        out.insert(s);
    }
    return out;
}

inline std::vector<Form> true_clock() {
    return {{{"3_R", every(3, 0)}, {"3_B", every(3, 1)}, {"6_G", every(6, 2)}, {"6_P", every(6, 5)}}};
}

// [3_a, 3_b, 6_G, 3_a, 3_b, 6_P] with {a, b} = {iR, iB} either way round.
inline std::vector<Form> variable() {
    std::vector<Form> out;
    for (int a : {0, 1})
        out.push_back({{"3_R", every(3, a)}, {"3_B", every(3, 1 - a)}, {"6_G", every(6, 2)}, {"6_P", every(6, 5)}});
    return out;
}

inline std::vector<Form> f6(bool input_green) {
    std::vector<Form> out;
    for (int a : {0, 1})
        out.push_back({{"3_a", every(3, a)},
                       {"3_b", every(3, 1 - a)},
                       {"in", every(6, input_green ? 2 : 5)},
                       {"out", every(6, input_green ? 5 : 2)}});
    return out;
}

inline std::vector<Form> f3(bool input_red, bool input_green) {
    return {{{"in3", every(3, input_red ? 0 : 1)},
             {"out3", every(3, input_red ? 1 : 0)},
             {"in6", every(6, input_green ? 2 : 5)},
             {"out6", every(6, input_green ? 5 : 2)}}};
}

// Every node: its 3-edge on the input colour, its three 9-edges on the
// other of red/blue, in any order.
inline std::vector<Form> d3(bool input_red) {
    const int in = input_red ? 0 : 1, nine = input_red ? 1 : 0;
    std::vector<Form> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
        for (int mask = 0; mask < 8; ++mask) {
            Form f{{"in", every(3, in)}, {"root.6_G", every(6, 2)}, {"root.6_P", every(6, 5)}};
            for (int j = 0; j < 3; ++j) {
                const std::string c = "copy" + std::to_string(j + 1);
                std::vector<int> rest;
                for (int p = 0; p < 3; ++p)
                    if (p != perm[j]) rest.push_back(p);
                if (mask >> j & 1) std::swap(rest[0], rest[1]);
                f["9_b" + std::to_string(j + 1)] = every(9, 3 * perm[j] + nine);
                f[c + ".9_1"] = every(9, 3 * rest[0] + nine);
                f[c + ".9_2"] = every(9, 3 * rest[1] + nine);
                f[c + ".3"] = every(3, in);
                f[c + ".6_P"] = every(6, 5);
                f[c + ".6_G"] = every(6, 2);
            }
            out.push_back(f);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// [3_R, 3_B, 12_a, 3_R, 3_B, 6_X, 3_R, 3_B, 12_b, 3_R, 3_B, 6_X] and the
// mirror for 6_G; the two chains may take either 12-slot.
inline std::vector<Form> d6(bool green) {
    const int x = green ? 2 : 5;
    const std::array<int, 2> slots = green ? std::array<int, 2>{5, 11} : std::array<int, 2>{2, 8};
    std::vector<Form> out;
    for (int swap : {0, 1}) {
        Form f{{"in", every(6, x)}, {"root.3_R", every(3, 0)}, {"root.3_B", every(3, 1)}};
        for (int c = 0; c < 2; ++c) {
            const std::string n = "chain" + std::to_string(c + 1);
            const int o = slots[c ^ swap];
            f["12_" + std::to_string(c + 1)] = every(12, o);
            f[n + ".12"] = every(12, o + 6);
            f[n + ".6"] = every(6, x);
            f[n + ".3_R"] = every(3, 0);
            f[n + ".3_B"] = every(3, 1);
        }
        out.push_back(f);
    }
    return out;
}

// [3_R, 12, 6_G, 3_R, 12, 6_P, ...] with the four 12_O inputs on the blue
// days 1, 4, 7, 10 (mod 12) in any order.
inline std::vector<Form> tension() {
    std::vector<Form> out;
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        Form f{{"3_R", every(3, 0)}, {"6_G", every(6, 2)}, {"6_P", every(6, 5)}};
        for (int k = 0; k < 4; ++k) f["12_O" + std::to_string(k + 1)] = every(12, 1 + 3 * perm[k]);
        out.push_back(f);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline std::set<LocalSchedule> enumerate(const LocalBuild& lb) {
    auto all = enumerate_local_schedules(lb.gadget, kPeriod);
    return {all.begin(), all.end()};
}

// Whether some schedule of the OR gadget with these inputs puts 12_O in
// blue slots.
inline bool or_blue_possible(const std::array<ColorMask, 3>& in) {
    auto lb = local_or(in);
    for (const auto& s : enumerate(lb))
        if (colors_used(s.days[lb["12_O"]]) == kBlue) return true;
    return false;
}

}  // namespace families
