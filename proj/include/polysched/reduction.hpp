#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polysched/cnf.hpp"
#include "polysched/core.hpp"
#include "polysched/local_schedules.hpp"
#include "polysched/slots.hpp"

namespace polysched {

enum class Sex : std::uint8_t { Male, Female };

inline Sex opposite(Sex s) { return s == Sex::Male ? Sex::Female : Sex::Male; }
inline const char* sex_name(Sex s) { return s == Sex::Male ? "male" : "female"; }

enum class GadgetKind : std::uint8_t { TrueClock, Variable, F3, F6, D3, D6, Inverter, Or, Fill, Tension, Pendant, Stub };

inline const char* kind_name(GadgetKind k) {
    switch (k) {
    case GadgetKind::TrueClock: return "TrueClock";
    case GadgetKind::Variable: return "Var";
    case GadgetKind::F3: return "F3";
    case GadgetKind::F6: return "F6";
    case GadgetKind::D3: return "D3";
    case GadgetKind::D6: return "D6";
    case GadgetKind::Inverter: return "Inverter";
    case GadgetKind::Or: return "Or";
    case GadgetKind::Fill: return "Fill";
    case GadgetKind::Tension: return "Tension";
    case GadgetKind::Pendant: return "Pendant";
    case GadgetKind::Stub: return "Stub";
    }
    return "?";
}

// Number of edges a fully wired node of each kind has; -1 for stubs.
inline int expected_degree(GadgetKind k) {
    switch (k) {
    case GadgetKind::TrueClock:
    case GadgetKind::Variable:
    case GadgetKind::F3:
    case GadgetKind::F6: return 4;
    case GadgetKind::D3: return 6;
    case GadgetKind::D6: return 5;
    case GadgetKind::Inverter: return 2;
    case GadgetKind::Or:
    case GadgetKind::Tension: return 7;
    case GadgetKind::Fill:
    case GadgetKind::Pendant: return 1;
    case GadgetKind::Stub: return -1;
    }
    return -1;
}

struct GadgetTag {
    GadgetKind kind = GadgetKind::Pendant;
    int index = -1;  // variable, clause or tension number where meaningful

    friend bool operator==(const GadgetTag&, const GadgetTag&) = default;
};

// What a frequency-3 signal carries: a constant colour, or a literal that is
// red exactly when it is true.
struct Signal {
    enum class Kind : std::uint8_t { Red, Blue, Literal };
    Kind kind = Kind::Red;
    Literal lit;

    static Signal red() { return {Kind::Red, {}}; }
    static Signal blue() { return {Kind::Blue, {}}; }
    static Signal of(Literal l) { return {Kind::Literal, l}; }

    bool is_red(const Assignment& a) const { return kind == Kind::Literal ? a.value(lit) : kind == Kind::Red; }
    Signal flipped() const {
        if (kind == Kind::Red) return blue();
        if (kind == Kind::Blue) return red();
        return of({lit.var, !lit.negated});
    }
    ColorMask three_color() const { return kind == Kind::Red ? kRed : kind == Kind::Blue ? kBlue : kRed | kBlue; }
    // 9-edges in a duplicator take the colour the 3-edges leave free.
    ColorMask nine_color() const { return kind == Kind::Red ? kBlue : kind == Kind::Blue ? kRed : kRed | kBlue; }

    friend bool operator==(const Signal& a, const Signal& b) {
        return a.kind == b.kind && (a.kind != Kind::Literal || a.lit == b.lit);
    }
};

enum class OrRole : std::uint8_t { InverterOut, FillA, FillB, Output };

// How the witness schedule places an edge: a fixed offset modulo its
// frequency, or an offset derived from the assignment.
struct EdgePlan {
    enum class Kind : std::uint8_t { Fixed, Three, Nine, OrPart };
    Kind kind = Kind::Fixed;
    int offset = 0;
    Signal signal;
    int phase = 0;
    int clause = -1;
    OrRole role = OrRole::Output;
    int slot = -1;

    static EdgePlan fixed(int o) { return {Kind::Fixed, o}; }
    static EdgePlan three(Signal s) { return {Kind::Three, 0, s}; }
    static EdgePlan nine(Signal s, int phase) { return {Kind::Nine, 0, s, phase}; }
    static EdgePlan or_part(int clause, OrRole r, int slot = -1) {
        EdgePlan p;
        p.kind = Kind::OrPart;
        p.clause = clause;
        p.role = r;
        p.slot = slot;
        return p;
    }
};

struct GadgetGraph {
    DpsInstance dps;
    std::vector<Sex> sex;
    std::vector<GadgetTag> gadget_of;
    std::vector<ColorMask> expected_color;  // one colour: pinned; several: free among them
    std::vector<EdgePlan> plan;
    std::vector<std::string> edge_label;
    CnfFormula formula;
    std::vector<std::array<int, 3>> clause_inputs;  // the 3-edge entering each inverter
    std::vector<int> clause_position;               // input slot 0..3 at its tension node
    int num_tensions = 0;
};

// Offsets used by the witness schedule (modulo the edge frequency).
inline constexpr int kRedOffset = 0, kBlueOffset = 1, kGreenOffset = 2, kPurpleOffset = 5;

class PolyculeBuilder {
public:
    struct Port {
        int node = -1;
        std::int64_t freq = 0;
        EdgePlan plan;
        ColorMask color = kAnyColor;
        std::string label;
    };

    enum class Need : std::uint8_t { Three, Green6, Purple6 };
    struct Request {
        int node;
        Need need;
        Signal signal;  // for Three
    };

    int add_person(Sex s, GadgetTag tag) {
        int id = static_cast<int>(sex_.size());
        sex_.push_back(s);
        tag_.push_back(tag);
        std::string name = kind_name(tag.kind);
        if (tag.index >= 0) name += std::to_string(tag.index + 1);
        name += "#" + std::to_string(id);
        names_.push_back(name);
        return id;
    }

    Sex sex_of(int v) const { return sex_.at(v); }
    const std::vector<GadgetTag>& tags() const { return tag_; }
    int num_people() const { return static_cast<int>(sex_.size()); }
    int num_edges() const { return static_cast<int>(ends_.size()); }
    bool adjacent(int a, int b) const { return pairs_.count(std::minmax(a, b)) > 0; }
    std::pair<int, int> ends(int e) const { return ends_.at(e); }
    std::int64_t freq(int e) const { return freq_.at(e); }
    const std::string& edge_label(int e) const { return labels_.at(e); }
    const std::vector<Request>& requests() const { return requests_; }

    int connect(const Port& p, int consumer) {
        if (sex_.at(p.node) == sex_.at(consumer))
            throw InternalError("edge " + p.label + " would join two " + sex_name(sex_[consumer]) + " people");
        if (!pairs_.insert(std::minmax(p.node, consumer)).second)
            throw InternalError("second edge between " + names_[p.node] + " and " + names_[consumer]);
        int e = num_edges();
        ends_.emplace_back(p.node, consumer);
        freq_.push_back(p.freq);
        plan_.push_back(p.plan);
        color_.push_back(p.color);
        labels_.push_back(p.label);
        return e;
    }

    // Unused output: a pendant of the opposite sex.
    int terminate(const Port& p) { return connect(p, add_person(opposite(sex_of(p.node)), {GadgetKind::Pendant})); }

    // Boundary edge of a local gadget: its far end is unconstrained.
    int to_stub(const Port& p) { return connect(p, add_person(opposite(sex_of(p.node)), {GadgetKind::Stub})); }

    Port stub_port(Sex s, std::int64_t f, EdgePlan plan, ColorMask color, std::string label) {
        return {add_person(s, {GadgetKind::Stub}), f, plan, color, std::move(label)};
    }

    // --- gadgets ---------------------------------------------------------

    struct ClockPorts {
        Port red, blue, green, purple;
    };

    ClockPorts true_clock() {
        int t = add_person(Sex::Male, {GadgetKind::TrueClock});
        return {{t, 3, EdgePlan::three(Signal::red()), kRed, "3_R"},
                {t, 3, EdgePlan::three(Signal::blue()), kBlue, "3_B"},
                {t, 6, EdgePlan::fixed(kGreenOffset), kGreen, "6_G"},
                {t, 6, EdgePlan::fixed(kPurpleOffset), kPurple, "6_P"}};
    }

    // Takes a 6_G or 6_P edge and returns the other colour from the opposite sex.
    Port f6(const Port& in) {
        int x = add_person(opposite(sex_of(in.node)), {GadgetKind::F6});
        connect(in, x);
        terminate({x, 3, EdgePlan::fixed(kRedOffset), kRed | kBlue, "3_a"});
        terminate({x, 3, EdgePlan::fixed(kBlueOffset), kRed | kBlue, "3_b"});
        return flip_six(x, in);
    }

    struct F3Ports {
        Port three, six;
    };

    // Takes a constant 3-edge and a 6-edge of the same sex, returns both
    // with the opposite colour and sex.
    F3Ports f3(const Port& in3, const Port& in6) {
        if (sex_of(in3.node) != sex_of(in6.node)) throw InternalError("F3 inputs must share a sex");
        int x = add_person(opposite(sex_of(in3.node)), {GadgetKind::F3});
        connect(in3, x);
        connect(in6, x);
        Signal s = in3.plan.signal.flipped();
        return {{x, 3, EdgePlan::three(s), s.three_color(), s.kind == Signal::Kind::Red ? "3_R" : "3_B"}, flip_six(x, in6)};
    }

    struct VariablePorts {
        Port positive, negative, green;
    };

    // Variable node fed by a 6_P edge; emits 3_iR (red iff x_i), 3_iB and 6_G.
    VariablePorts variable(int var, const Port& in_purple) {
        int x = add_person(opposite(sex_of(in_purple.node)), {GadgetKind::Variable, var});
        connect(in_purple, x);
        const std::string n = std::to_string(var + 1);
        Signal pos = Signal::of({var, false}), neg = Signal::of({var, true});
        return {{x, 3, EdgePlan::three(pos), pos.three_color(), "3_" + n + "R"},
                {x, 3, EdgePlan::three(neg), neg.three_color(), "3_" + n + "B"},
                {x, 6, EdgePlan::fixed(kGreenOffset), kGreen, "6_G"}};
    }

    // Puts `node` on the 6_G thread. The thread is always a male 6_G port.
    Port thread_through(int node, const Port& thread) {
        if (sex_of(node) == Sex::Female) {
            if (adjacent(thread.node, node)) return thread_through(node, f6(f6(thread)));
            connect(thread, node);
            return f6({node, 6, EdgePlan::fixed(kPurpleOffset), kPurple, "6_P"});
        }
        connect(f6(thread), node);
        return {node, 6, EdgePlan::fixed(kGreenOffset), kGreen, "6_G"};
    }

    struct Outputs {
        std::vector<Port> male, female;  // by sex of the emitting node
    };

    // Nodes per level below the root for a 3-duplicator tree. Level k has
    // the root's sex for even k; level 1 holds up to 3 nodes, each deeper
    // node hangs off one of two free 9-slots of its parent.
    static std::vector<int> d3_levels(Sex root_sex, int need_male, int need_female) {
        std::vector<int> used;
        int cap = 3;
        for (int k = 1; need_male > 0 || need_female > 0; ++k, cap *= 2) {
            Sex s = k % 2 == 0 ? root_sex : opposite(root_sex);
            int& need = s == Sex::Male ? need_male : need_female;
            int u = std::min(cap, need);
            need -= u;
            used.push_back(u);
        }
        for (int k = static_cast<int>(used.size()) - 2; k >= 0; --k) used[k] = std::max(used[k], (used[k + 1] + 1) / 2);
        return used;
    }

    // 3-duplicator tree on input `in3`; every non-root node emits one copy.
    // Returns exactly the requested numbers of copies by sex, the rest go
    // to pendants. The thread passes through every node.
    Outputs d3_tree(const Port& in3, Port& thread, int need_male, int need_female) {
        const Signal sig = in3.plan.signal;
        const Sex root_sex = opposite(sex_of(in3.node));
        int root = add_person(root_sex, {GadgetKind::D3});
        connect(in3, root);
        thread = thread_through(root, thread);
        const auto used = d3_levels(root_sex, need_male, need_female);
        auto nine = [&](int from, int phase) {
            return Port{from, 9, EdgePlan::nine(sig, phase), sig.nine_color(), "9_b"};
        };
        Outputs all;
        std::vector<int> prev;            // nodes of the previous level
        std::vector<int> prev_phase;      // phase of each node's incoming 9-edge
        for (std::size_t k = 0; k < used.size(); ++k) {
            Sex s = k % 2 == 0 ? opposite(root_sex) : root_sex;
            std::vector<int> cur, cur_phase;
            for (int j = 0; j < used[k]; ++j) {
                int parent, phase;
                if (k == 0) {
                    parent = root;
                    phase = j;
                } else {
                    parent = prev[j / 2];
                    phase = free_phases(prev_phase[j / 2])[j % 2];
                }
                int x = add_person(s, {GadgetKind::D3});
                connect(nine(parent, phase), x);
                thread = thread_through(x, thread);
                Port out{x, 3, EdgePlan::three(sig), in3.color, in3.label};
                (s == Sex::Male ? all.male : all.female).push_back(out);
                cur.push_back(x);
                cur_phase.push_back(phase);
            }
            // empty 9-slots of the parents
            if (k == 0) {
                for (int j = used[0]; j < 3; ++j) terminate(nine(root, j));
            } else {
                for (int j = used[k]; j < 2 * used[k - 1]; ++j)
                    terminate(nine(prev[j / 2], free_phases(prev_phase[j / 2])[j % 2]));
            }
            prev = cur;
            prev_phase = cur_phase;
        }
        for (std::size_t i = 0; i < prev.size(); ++i)
            for (int ph : free_phases(prev_phase[i])) terminate(nine(prev[i], ph));
        if (used.empty())
            for (int j = 0; j < 3; ++j) terminate(nine(root, j));
        return keep(all, need_male, need_female);
    }

    // 6-duplicator: root on the input 6_X edge, two chains of nodes linked
    // by 12-edges; every chain node emits a 6_X copy. Each node needs a
    // constant 3_R and 3_B, registered as requests. Without an input port
    // the root asks for a 6_X edge itself.
    Outputs d6_chain(bool green, const std::optional<Port>& input, Sex root_sex, int need_male, int need_female) {
        const ColorMask twelve = green ? kPurple : kGreen;
        const int out_offset = green ? kGreenOffset : kPurpleOffset;
        const ColorMask out_color = green ? kGreen : kPurple;
        const int want_male = need_male, want_female = need_female;
        int root = add_person(root_sex, {GadgetKind::D6});
        if (input) {
            if (sex_of(input->node) == root_sex) throw InternalError("D6 input has the wrong sex");
            connect(*input, root);
        } else {
            request(root, green ? Need::Green6 : Need::Purple6);
        }
        request(root, Need::Three, Signal::red());
        request(root, Need::Three, Signal::blue());

        std::vector<int> used;
        for (int d = 1; need_male > 0 || need_female > 0; ++d) {
            Sex s = d % 2 == 1 ? opposite(root_sex) : root_sex;
            int& need = s == Sex::Male ? need_male : need_female;
            int u = std::min(2, need);
            need -= u;
            used.push_back(u);
        }
        for (int d = static_cast<int>(used.size()) - 2; d >= 0; --d) used[d] = std::max(used[d], used[d + 1]);

        Outputs all;
        std::array<int, 2> tail{root, root};
        std::array<int, 2> offset{green ? 5 : 2, green ? 11 : 8};
        auto link = [&](int from, int off) { return Port{from, 12, EdgePlan::fixed(off), twelve, "12"}; };
        for (std::size_t d = 0; d < used.size(); ++d) {
            Sex s = d % 2 == 0 ? opposite(root_sex) : root_sex;
            for (int c = 0; c < used[d]; ++c) {
                int x = add_person(s, {GadgetKind::D6});
                connect(link(tail[c], offset[c]), x);
                request(x, Need::Three, Signal::red());
                request(x, Need::Three, Signal::blue());
                (s == Sex::Male ? all.male : all.female).push_back({x, 6, EdgePlan::fixed(out_offset), out_color, green ? "6_G" : "6_P"});
                tail[c] = x;
                offset[c] = (offset[c] + 6) % 12;
            }
        }
        for (int c = 0; c < 2; ++c) terminate(link(tail[c], offset[c]));
        return keep(all, want_male, want_female);
    }

    // OR gadget for clause j: three inverters (literal inputs, padded with
    // constant 3_B), the OR node with a constant 3_R, two fill nodes.
    Port or_gadget(int j, const std::vector<Literal>& lits) {
        int o = add_person(Sex::Male, {GadgetKind::Or, j});
        request(o, Need::Three, Signal::red());
        std::array<int, 3> inv{};
        for (int k = 0; k < 3; ++k) {
            inv[k] = add_person(Sex::Female, {GadgetKind::Inverter, j});
            request(inv[k], Need::Three, k < static_cast<int>(lits.size()) ? Signal::of(lits[k]) : Signal::blue());
            connect({inv[k], 12, EdgePlan::or_part(j, OrRole::InverterOut, k), kBlue | kGreen | kPurple,
                     "12_" + std::to_string(k + 1)},
                    o);
        }
        inverters_.push_back(inv);
        for (auto [role, name] : {std::pair{OrRole::FillA, "6_1"}, std::pair{OrRole::FillB, "6_2"}})
            connect({o, 6, EdgePlan::or_part(j, role), kBlue | kGreen | kPurple, name},
                    add_person(Sex::Female, {GadgetKind::Fill, j}));
        return {o, 12, EdgePlan::or_part(j, OrRole::Output), kBlue, "12_O"};
    }

    // Tension node absorbing up to four 12_O edges in its four blue slots.
    int tension(int q, const std::vector<Port>& outs) {
        if (outs.size() > 4) throw InternalError("a tension node takes at most four inputs");
        int t = add_person(Sex::Female, {GadgetKind::Tension, q});
        for (int pos = 0; pos < 4; ++pos) {
            if (pos < static_cast<int>(outs.size())) {
                connect(outs[pos], t);
                position_.resize(std::max<std::size_t>(position_.size(), outs[pos].plan.clause + 1), -1);
                position_[outs[pos].plan.clause] = pos;
            } else {
                terminate({t, 12, EdgePlan::fixed(1 + 3 * pos), kBlue, "12_O"});
            }
        }
        request(t, Need::Three, Signal::red());
        request(t, Need::Green6);
        request(t, Need::Purple6);
        return t;
    }

    // --- requests --------------------------------------------------------

    void request(int node, Need need, Signal s = {}) { requests_.push_back({node, need, s}); }

    // Pending requests of a kind, split by the sex their supplier must have.
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> pending(Need need, Signal s = {}) const {
        std::vector<std::size_t> male, female;
        for (std::size_t i = 0; i < requests_.size(); ++i) {
            const auto& r = requests_[i];
            if (done_.size() > i && done_[i]) continue;
            if (r.need != need || (need == Need::Three && !(r.signal == s))) continue;
            (sex_of(r.node) == Sex::Female ? male : female).push_back(i);
        }
        return {male, female};
    }

    void fulfil(std::size_t req, const Port& p) {
        done_.resize(requests_.size(), 0);
        if (done_[req]) throw InternalError("request served twice");
        done_[req] = 1;
        connect(p, requests_[req].node);
    }

    void fulfil_all(const std::vector<std::size_t>& reqs, const std::vector<Port>& ports) {
        if (reqs.size() != ports.size()) throw InternalError("supply does not match demand");
        for (std::size_t i = 0; i < reqs.size(); ++i) fulfil(reqs[i], ports[i]);
    }

    // Serves every request for signal `s` from `src`: directly when there is
    // exactly one consumer of the right sex, through a 3-duplicator otherwise.
    void supply_three(const Port& src, Signal s, Port& thread) {
        auto [male, female] = pending(Need::Three, s);
        const std::size_t total = male.size() + female.size();
        const bool src_male = sex_of(src.node) == Sex::Male;
        if (total == 0) {
            terminate(src);
        } else if (total == 1 && (src_male ? male.size() : female.size()) == 1) {
            fulfil(src_male ? male[0] : female[0], src);
        } else {
            auto out = d3_tree(src, thread, static_cast<int>(male.size()), static_cast<int>(female.size()));
            fulfil_all(male, out.male);
            fulfil_all(female, out.female);
        }
    }

    std::size_t unserved() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < requests_.size(); ++i)
            if (done_.size() <= i || !done_[i]) ++n;
        return n;
    }

    // Serves all remaining requests from fresh stubs (local gadgets only).
    void serve_with_stubs(std::vector<int>* stub_edges = nullptr) {
        for (std::size_t i = 0; i < requests_.size(); ++i) {
            if (done_.size() > i && done_[i]) continue;
            const auto& r = requests_[i];
            Sex s = opposite(sex_of(r.node));
            Port p;
            if (r.need == Need::Three)
                p = stub_port(s, 3, EdgePlan::three(r.signal), r.signal.three_color(), "3");
            else if (r.need == Need::Green6)
                p = stub_port(s, 6, EdgePlan::fixed(kGreenOffset), kGreen, "6_G");
            else
                p = stub_port(s, 6, EdgePlan::fixed(kPurpleOffset), kPurple, "6_P");
            fulfil(i, p);
            if (stub_edges) stub_edges->push_back(num_edges() - 1);
        }
    }

    GadgetGraph finish(CnfFormula formula, int num_tensions) && {
        if (unserved() != 0) throw InternalError("unserved constant requests remain");
        std::vector<Person> people;
        for (int v = 0; v < num_people(); ++v) people.push_back({v, names_[v]});
        GadgetGraph g;
        g.dps = DpsInstance(Graph(std::move(people), ends_), freq_);
        g.sex = sex_;
        g.gadget_of = tag_;
        g.expected_color = color_;
        g.plan = plan_;
        g.edge_label = labels_;
        g.formula = std::move(formula);
        g.num_tensions = num_tensions;
        g.clause_position = position_;
        g.clause_position.resize(g.formula.clauses.size(), -1);
        // Graph stores endpoints as (min, max), edge indices are unchanged.
        for (const auto& inv : inverters_) {
            std::array<int, 3> in{-1, -1, -1};
            for (int k = 0; k < 3; ++k)
                for (int e : g.dps.graph.incident(inv[k]))
                    if (g.dps.freq[e] == 3) in[k] = e;
            g.clause_inputs.push_back(in);
        }
        return g;
    }

private:
    static std::array<int, 2> free_phases(int used) {
        std::array<int, 2> out{};
        int i = 0;
        for (int p = 0; p < 3; ++p)
            if (p != used) out[i++] = p;
        return out;
    }

    Port flip_six(int x, const Port& in) {
        const bool in_green = in.color == kGreen;
        return {x, 6, EdgePlan::fixed(in_green ? kPurpleOffset : kGreenOffset), in_green ? kPurple : kGreen,
                in_green ? "6_P" : "6_G"};
    }

    Outputs keep(Outputs all, int male, int female) {
        Outputs out;
        for (std::size_t i = 0; i < all.male.size(); ++i)
            if (static_cast<int>(i) < male) out.male.push_back(all.male[i]);
            else terminate(all.male[i]);
        for (std::size_t i = 0; i < all.female.size(); ++i)
            if (static_cast<int>(i) < female) out.female.push_back(all.female[i]);
            else terminate(all.female[i]);
        return out;
    }

private:
    std::vector<Sex> sex_;
    std::vector<GadgetTag> tag_;
    std::vector<std::string> names_;
    std::vector<std::pair<int, int>> ends_;
    std::set<std::pair<int, int>> pairs_;
    std::vector<std::int64_t> freq_;
    std::vector<EdgePlan> plan_;
    std::vector<ColorMask> color_;
    std::vector<std::string> labels_;
    std::vector<Request> requests_;
    std::vector<char> done_;
    std::vector<std::array<int, 3>> inverters_;
    std::vector<int> position_;
};

// Compiles a 3-CNF formula into a bipartite DPS polycule that has a
// slot-respecting schedule iff the formula is satisfiable.
inline GadgetGraph build_polycule(const CnfFormula& phi) {
    check_formula(phi);
    using Port = PolyculeBuilder::Port;
    using Need = PolyculeBuilder::Need;
    PolyculeBuilder b;
    auto clock = b.true_clock();
    Port thread = clock.green;

    std::vector<PolyculeBuilder::VariablePorts> vars;
    for (int i = 0; i < phi.num_vars; ++i) {
        vars.push_back(b.variable(i, b.f6(thread)));
        thread = vars.back().green;
    }

    const int m = static_cast<int>(phi.clauses.size());
    std::vector<Port> outs;
    for (int j = 0; j < m; ++j) outs.push_back(b.or_gadget(j, phi.clauses[j]));
    const int tensions = (m + 3) / 4;
    for (int q = 0; q < tensions; ++q)
        b.tension(q, std::vector<Port>(outs.begin() + 4 * q, outs.begin() + std::min(m, 4 * q + 4)));

    for (int i = 0; i < phi.num_vars; ++i) {
        b.supply_three(vars[i].positive, Signal::of({i, false}), thread);
        b.supply_three(vars[i].negative, Signal::of({i, true}), thread);
    }

    // 6_P constants from the clock, through a duplicator when shared.
    {
        auto [male, female] = b.pending(Need::Purple6);
        if (male.empty() && female.empty()) {
            b.terminate(clock.purple);
        } else if (male.size() == 1 && female.empty()) {
            b.fulfil(male[0], clock.purple);
        } else {
            auto out = b.d6_chain(false, clock.purple, Sex::Female, static_cast<int>(male.size()),
                                  static_cast<int>(female.size()));
            b.fulfil_all(male, out.male);
            b.fulfil_all(female, out.female);
        }
    }
    // 6_G constants; a shared duplicator takes its input from the thread end.
    {
        auto [male, female] = b.pending(Need::Green6);
        if (male.size() + female.size() >= 2 || !female.empty()) {
            auto out = b.d6_chain(true, std::nullopt, Sex::Female, static_cast<int>(male.size()),
                                  static_cast<int>(female.size()));
            b.fulfil_all(male, out.male);
            b.fulfil_all(female, out.female);
        }
    }
    b.supply_three(clock.red, Signal::red(), thread);
    b.supply_three(clock.blue, Signal::blue(), thread);

    auto [male, female] = b.pending(Need::Green6);
    if (!female.empty() || male.size() > 1) throw InternalError("6_G demand left after duplication");
    if (male.empty()) {
        b.terminate(thread);
    } else {
        // the thread end may already feed this consumer a constant
        if (b.adjacent(thread.node, b.requests()[male[0]].node)) thread = b.f6(b.f6(thread));
        b.fulfil(male[0], thread);
    }

    return std::move(b).finish(phi, tensions);
}

// Offset of edge e (modulo its frequency) in the witness schedule.
inline int witness_offset(const GadgetGraph& g, int e, const Assignment& a) {
    const EdgePlan& p = g.plan[e];
    switch (p.kind) {
    case EdgePlan::Kind::Fixed: return p.offset;
    case EdgePlan::Kind::Three: return p.signal.is_red(a) ? kRedOffset : kBlueOffset;
    case EdgePlan::Kind::Nine: return 3 * p.phase + (p.signal.is_red(a) ? 1 : 0);
    case EdgePlan::Kind::OrPart: break;
    }
    const auto& inputs = g.clause_inputs.at(p.clause);
    int first_red = -1;
    for (int k = 0; k < 3 && first_red < 0; ++k)
        if (g.plan[inputs[k]].signal.is_red(a)) first_red = k;
    if (first_red < 0) throw InternalError("clause " + std::to_string(p.clause + 1) + " has no true literal");
    const int s = ((3 * g.clause_position.at(p.clause) - 6) % 12 + 12) % 12;
    switch (p.role) {
    case OrRole::InverterOut: {
        if (p.slot == first_red) return (1 + s) % 12;
        const int rank = p.slot < first_red ? p.slot : p.slot - 1;
        return (rank == 0 ? 5 + s : 11 + s) % 12;
    }
    case OrRole::FillA: return (2 + s) % 6;
    case OrRole::FillB: return (4 + s) % 6;
    case OrRole::Output: return (7 + s) % 12;
    }
    return 0;
}

inline constexpr int kWitnessPeriod = 36;

// Edges whose days leave their expected colours.
inline std::vector<int> slot_violations(const GadgetGraph& g, const Schedule& s) {
    std::vector<std::uint8_t> seen(g.dps.num_edges(), 0);
    for (std::int64_t t = 0; t < s.period(); ++t)
        for (int e : s.at(t))
            if (e >= 0 && e < g.dps.num_edges() && !allows(g.expected_color[e], slot_color(t))) seen[e] = 1;
    std::vector<int> out;
    for (int e = 0; e < g.dps.num_edges(); ++e)
        if (seen[e]) out.push_back(e);
    return out;
}

// Period-36 schedule built from a satisfying assignment.
inline Schedule witness_schedule(const GadgetGraph& g, const Assignment& a) {
    if (static_cast<int>(a.values.size()) != g.formula.num_vars)
        throw InvalidInput("assignment covers " + std::to_string(a.values.size()) + " variables, formula has " +
                           std::to_string(g.formula.num_vars));
    for (std::size_t j = 0; j < g.formula.clauses.size(); ++j)
        if (std::none_of(g.formula.clauses[j].begin(), g.formula.clauses[j].end(),
                         [&](const Literal& l) { return a.value(l); }))
            throw PreconditionError("satisfying assignment", "clause " + std::to_string(j + 1) + " is false");
    std::vector<std::vector<int>> days(kWitnessPeriod);
    for (int e = 0; e < g.dps.num_edges(); ++e) {
        const int f = static_cast<int>(g.dps.freq[e]);
        for (int t = witness_offset(g, e, a) % f; t < kWitnessPeriod; t += f) days[t].push_back(e);
    }
    Schedule s(std::move(days));
    if (auto v = validate_dps(s, g.dps); !v.empty()) throw InternalError("witness schedule invalid: " + v[0].message());
    if (auto v = slot_violations(g, s); !v.empty())
        throw InternalError("witness schedule puts " + g.edge_label[v[0]] + " in a wrong slot");
    return s;
}

struct StructureReport {
    std::vector<std::string> failures;
    int people = 0;
    int edges = 0;
    std::int64_t max_freq = 0;
    std::int64_t size_budget = 0;

    bool ok() const { return failures.empty(); }
};

// Linear size budget: people <= kSizePerSymbol * (n + m) + kSizeBase.
inline constexpr std::int64_t kSizePerSymbol = 60;
inline constexpr std::int64_t kSizeBase = 60;

inline StructureReport check_structure(const GadgetGraph& g) {
    StructureReport r;
    const Graph& G = g.dps.graph;
    r.people = G.num_people();
    r.edges = G.num_edges();
    auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };
    if (static_cast<int>(g.sex.size()) != r.people || static_cast<int>(g.gadget_of.size()) != r.people) {
        fail("sex or gadget labels do not cover every person");
        return r;
    }
    for (const auto& e : G.edges())
        if (g.sex[e.u] == g.sex[e.v])
            fail("not bipartite: edge " + std::to_string(e.index) + " joins two " + sex_name(g.sex[e.u]) + " people");
    for (std::int64_t f : g.dps.freq) r.max_freq = std::max(r.max_freq, f);
    if (r.max_freq > 12) fail("max frequency " + std::to_string(r.max_freq) + " exceeds 12");
    if (!g.formula.clauses.empty() && r.max_freq != 12) fail("max frequency " + std::to_string(r.max_freq) + " is not 12");
    for (int v = 0; v < r.people; ++v) {
        const GadgetKind k = g.gadget_of[v].kind;
        const int deg = G.degree(v);
        if (expected_degree(k) >= 0 && deg != expected_degree(k))
            fail(std::string(kind_name(k)) + " person " + std::to_string(v) + " has degree " + std::to_string(deg) +
                 ", expected " + std::to_string(expected_degree(k)));
        if (k == GadgetKind::Pendant || k == GadgetKind::Stub) continue;
        Rational d = 0;
        for (int e : G.incident(v)) d += frac(1, g.dps.freq[e]);
        if (d > 1) fail("person " + std::to_string(v) + " has local density " + to_string(d));
    }
    const std::int64_t symbols = g.formula.num_vars + static_cast<std::int64_t>(g.formula.clauses.size());
    r.size_budget = kSizePerSymbol * symbols + kSizeBase;
    if (r.people > r.size_budget)
        fail(std::to_string(r.people) + " people exceed the budget " + std::to_string(r.size_budget));
    return r;
}

}  // namespace polysched
