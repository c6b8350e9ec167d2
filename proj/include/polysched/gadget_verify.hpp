#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polysched/local_schedules.hpp"
#include "polysched/reduction.hpp"

namespace polysched {

// A gadget cut out of a polycule: boundary edges end at stubs, named edges
// can be looked up by role.
struct LocalBuild {
    LocalGadget gadget;
    std::map<std::string, int> edge;
    std::vector<std::string> edge_label;

    int operator[](const std::string& role) const { return edge.at(role); }
};

namespace detail {

class LocalBuilder {
public:
    using Port = PolyculeBuilder::Port;

    PolyculeBuilder b;

    int node(Sex s, GadgetKind k) { return b.add_person(s, {k}); }

    // Edge from a stub into `to`, pinned to `pin` (0 = free).
    int from_stub(const std::string& role, int to, std::int64_t f, ColorMask pin) {
        return name(role, b.connect(b.stub_port(opposite(b.sex_of(to)), f, EdgePlan::fixed(0), kAnyColor, role), to), pin);
    }
    int to_stub(const std::string& role, int from, std::int64_t f, ColorMask pin = 0) {
        return name(role, b.to_stub({from, f, EdgePlan::fixed(0), kAnyColor, role}), pin);
    }
    int link(const std::string& role, int from, int to, std::int64_t f, ColorMask pin = 0) {
        return name(role, b.connect({from, f, EdgePlan::fixed(0), kAnyColor, role}, to), pin);
    }

    LocalBuild finish() {
        LocalBuild out;
        std::vector<Person> people;
        for (int v = 0; v < b.num_people(); ++v) people.push_back({v, std::nullopt});
        std::vector<std::pair<int, int>> ends;
        std::vector<std::int64_t> freq;
        for (int e = 0; e < b.num_edges(); ++e) {
            ends.push_back(b.ends(e));
            freq.push_back(b.freq(e));
            out.edge_label.push_back(b.edge_label(e));
        }
        out.gadget.inst = DpsInstance(Graph(std::move(people), ends), freq);
        for (int v = 0; v < b.num_people(); ++v) out.gadget.internal.push_back(b.tags()[v].kind != GadgetKind::Stub);
        pins_.resize(b.num_edges(), 0);
        out.gadget.pins = pins_;
        out.edge = roles_;
        return out;
    }

private:
    int name(const std::string& role, int e, ColorMask pin) {
        roles_[role] = e;
        pins_.resize(b.num_edges(), 0);
        pins_[e] = pin;
        return e;
    }

    std::map<std::string, int> roles_;
    std::vector<ColorMask> pins_;
};

}  // namespace detail

// True Clock with its four edges pinned to their colours.
inline LocalBuild local_true_clock() {
    detail::LocalBuilder L;
    int t = L.node(Sex::Male, GadgetKind::TrueClock);
    L.to_stub("3_R", t, 3, kRed);
    L.to_stub("3_B", t, 3, kBlue);
    L.to_stub("6_G", t, 6, kGreen);
    L.to_stub("6_P", t, 6, kPurple);
    return L.finish();
}

// Variable node whose incoming 6_P edge is purple; outputs free.
inline LocalBuild local_variable() {
    detail::LocalBuilder L;
    int x = L.node(Sex::Male, GadgetKind::Variable);
    L.from_stub("6_P", x, 6, kPurple);
    L.to_stub("3_R", x, 3);
    L.to_stub("3_B", x, 3);
    L.to_stub("6_G", x, 6);
    return L.finish();
}

// F6 flipper fed a pinned 6-edge; its two 3-edges go to pendants.
inline LocalBuild local_f6(bool input_green) {
    detail::LocalBuilder L;
    int x = L.node(Sex::Female, GadgetKind::F6);
    L.from_stub("in", x, 6, input_green ? kGreen : kPurple);
    L.link("3_a", x, L.node(Sex::Male, GadgetKind::Pendant), 3);
    L.link("3_b", x, L.node(Sex::Male, GadgetKind::Pendant), 3);
    L.to_stub("out", x, 6);
    return L.finish();
}

// F3 flipper fed a pinned 3-edge and a pinned 6-edge; outputs free.
inline LocalBuild local_f3(bool input_red, bool input_green) {
    detail::LocalBuilder L;
    int x = L.node(Sex::Female, GadgetKind::F3);
    L.from_stub("in3", x, 3, input_red ? kRed : kBlue);
    L.from_stub("in6", x, 6, input_green ? kGreen : kPurple);
    L.to_stub("out3", x, 3);
    L.to_stub("out6", x, 6);
    return L.finish();
}

// Two levels of a 3-duplicator: a female root on a pinned 3-edge and three
// male copies. Thread inputs are pinned, all outputs free.
inline LocalBuild local_d3(bool input_red) {
    detail::LocalBuilder L;
    int root = L.node(Sex::Female, GadgetKind::D3);
    L.from_stub("in", root, 3, input_red ? kRed : kBlue);
    L.from_stub("root.6_G", root, 6, kGreen);
    L.to_stub("root.6_P", root, 6);
    for (int j = 0; j < 3; ++j) {
        const std::string c = "copy" + std::to_string(j + 1);
        int x = L.node(Sex::Male, GadgetKind::D3);
        L.link("9_b" + std::to_string(j + 1), root, x, 9);
        L.from_stub(c + ".6_P", x, 6, kPurple);
        L.to_stub(c + ".6_G", x, 6);
        L.to_stub(c + ".3", x, 3);
        L.to_stub(c + ".9_1", x, 9);
        L.to_stub(c + ".9_2", x, 9);
    }
    return L.finish();
}

// 6-duplicator root on a pinned 6_X edge with one node on each chain.
inline LocalBuild local_d6(bool green) {
    detail::LocalBuilder L;
    const ColorMask x = green ? kGreen : kPurple;
    int root = L.node(Sex::Female, GadgetKind::D6);
    L.from_stub("in", root, 6, x);
    L.from_stub("root.3_R", root, 3, kRed);
    L.from_stub("root.3_B", root, 3, kBlue);
    for (int c = 1; c <= 2; ++c) {
        const std::string n = "chain" + std::to_string(c);
        int v = L.node(Sex::Male, GadgetKind::D6);
        L.link("12_" + std::to_string(c), root, v, 12);
        L.from_stub(n + ".3_R", v, 3, kRed);
        L.from_stub(n + ".3_B", v, 3, kBlue);
        L.to_stub(n + ".6", v, 6);
        L.to_stub(n + ".12", v, 12);
    }
    return L.finish();
}

// OR gadget with its three inverter inputs pinned.
inline LocalBuild local_or(const std::array<ColorMask, 3>& inputs) {
    detail::LocalBuilder L;
    int o = L.node(Sex::Male, GadgetKind::Or);
    L.from_stub("3_R", o, 3, kRed);
    for (int k = 0; k < 3; ++k) {
        const std::string n = std::to_string(k + 1);
        int inv = L.node(Sex::Female, GadgetKind::Inverter);
        L.from_stub("in" + n, inv, 3, inputs[k]);
        L.link("12_" + n, inv, o, 12);
    }
    L.link("6_1", o, L.node(Sex::Female, GadgetKind::Fill), 6);
    L.link("6_2", o, L.node(Sex::Female, GadgetKind::Fill), 6);
    L.to_stub("12_O", o, 12);
    return L.finish();
}

// Tension node with pinned constants and four 12_O inputs (0 = free).
inline LocalBuild local_tension(const std::array<ColorMask, 4>& inputs) {
    detail::LocalBuilder L;
    int t = L.node(Sex::Female, GadgetKind::Tension);
    L.from_stub("3_R", t, 3, kRed);
    L.from_stub("6_G", t, 6, kGreen);
    L.from_stub("6_P", t, 6, kPurple);
    for (int k = 0; k < 4; ++k) L.from_stub("12_O" + std::to_string(k + 1), t, 12, inputs[k]);
    return L.finish();
}

struct GadgetCheck {
    std::string name;
    std::size_t schedules = 0;
    bool passed = false;
    std::string detail;
};

// Enumerates every gadget's local schedules and checks the stated forms.
inline std::vector<GadgetCheck> verify_gadget_lemmas(std::uint64_t budget = 200'000'000) {
    std::vector<GadgetCheck> out;
    auto run = [&](const LocalBuild& lb) { return enumerate_local_schedules(lb.gadget, 36, budget); };
    auto color = [](const LocalSchedule& s, int e) { return colors_used(s.days[e]); };
    auto add = [&](std::string name, std::size_t n, bool ok, std::string detail) {
        out.push_back({std::move(name), n, ok, std::move(detail)});
    };

    {
        auto lb = local_true_clock();
        auto all = run(lb);
        add("true-clock", all.size(), all.size() == 1, "one schedule [3_R,3_B,6_G,3_R,3_B,6_P]");
    }
    {
        auto lb = local_variable();
        auto all = run(lb);
        std::set<ColorMask> red_side;
        bool ok = all.size() == 2;
        for (const auto& s : all) {
            ok = ok && color(s, lb["6_G"]) == kGreen && (color(s, lb["3_R"]) | color(s, lb["3_B"])) == (kRed | kBlue);
            red_side.insert(color(s, lb["3_R"]));
        }
        add("variable", all.size(), ok && red_side.size() == 2, "3_iR red or blue, 6_G green");
    }
    for (bool green : {true, false}) {
        auto lb = local_f6(green);
        auto all = run(lb);
        bool ok = all.size() == 2;
        for (const auto& s : all) ok = ok && color(s, lb["out"]) == (green ? kPurple : kGreen);
        add(std::string("f6 from ") + (green ? "green" : "purple"), all.size(), ok, "output takes the other 6 colour");
    }
    for (bool red : {true, false})
        for (bool green : {true, false}) {
            auto lb = local_f3(red, green);
            auto all = run(lb);
            bool ok = all.size() == 1 && color(all[0], lb["out3"]) == (red ? kBlue : kRed) &&
                      color(all[0], lb["out6"]) == (green ? kPurple : kGreen);
            add(std::string("f3 from ") + (red ? "red" : "blue") + "/" + (green ? "green" : "purple"), all.size(), ok,
                "one schedule, both outputs flipped");
        }
    for (bool red : {true, false}) {
        auto lb = local_d3(red);
        auto all = run(lb);
        bool ok = all.size() == 48;
        const ColorMask c = red ? kRed : kBlue, nine = red ? kBlue : kRed;
        for (const auto& s : all)
            for (int j = 1; j <= 3; ++j) {
                const std::string n = "copy" + std::to_string(j);
                ok = ok && color(s, lb[n + ".3"]) == c && color(s, lb["9_b" + std::to_string(j)]) == nine &&
                     color(s, lb[n + ".9_1"]) == nine && color(s, lb[n + ".9_2"]) == nine;
            }
        add(std::string("d3 from ") + (red ? "red" : "blue"), all.size(), ok, "every copy carries the input colour");
    }
    for (bool green : {true, false}) {
        auto lb = local_d6(green);
        auto all = run(lb);
        bool ok = all.size() == 2;
        const ColorMask x = green ? kGreen : kPurple, twelve = green ? kPurple : kGreen;
        for (const auto& s : all)
            for (const char* e : {"chain1.6", "chain2.6"}) ok = ok && color(s, lb[e]) == x;
        for (const auto& s : all)
            for (const char* e : {"12_1", "12_2", "chain1.12", "chain2.12"}) ok = ok && color(s, lb[e]) == twelve;
        add(std::string("d6 ") + (green ? "green" : "purple"), all.size(), ok, "copies share the input colour");
    }
    for (int combo = 0; combo < 8; ++combo) {
        std::array<ColorMask, 3> in{};
        std::string name = "or ";
        for (int k = 0; k < 3; ++k) {
            in[k] = combo >> k & 1 ? kRed : kBlue;
            name += combo >> k & 1 ? 'R' : 'B';
        }
        auto lb = local_or(in);
        auto all = run(lb);
        const bool blue = std::any_of(all.begin(), all.end(), [&](const LocalSchedule& s) { return color(s, lb["12_O"]) == kBlue; });
        add(name, all.size(), blue == (combo != 0), blue ? "12_O can be blue" : "12_O never blue");
    }
    {
        auto lb = local_tension({0, 0, 0, 0});
        auto all = run(lb);
        bool ok = all.size() == 24;
        for (const auto& s : all)
            for (int k = 1; k <= 4; ++k) ok = ok && color(s, lb["12_O" + std::to_string(k)]) == kBlue;
        add("tension", all.size(), ok, "all inputs in blue slots");
    }
    for (ColorMask bad : {kRed, kGreen, kPurple}) {
        auto lb = local_tension({bad, kBlue, kBlue, kBlue});
        auto all = run(lb);
        add(std::string("tension with a ") + color_name(colors_in(bad)[0]) + " input", all.size(), all.empty(),
            "no schedule");
    }
    return out;
}

}  // namespace polysched
