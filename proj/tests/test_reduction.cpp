#include "catch_amalgamated.hpp"

#include "polysched/converters.hpp"
#include "polysched/random.hpp"
#include "polysched/reduction.hpp"

using namespace polysched;

namespace {

CnfFormula worked_example() { return parse_dimacs("p cnf 3 4\n1 2 0\n-1 0\n1 -2 3 0\n-3 0\n"); }

std::vector<int> people_of(const GadgetGraph& g, GadgetKind k) {
    std::vector<int> out;
    for (int v = 0; v < g.dps.graph.num_people(); ++v)
        if (g.gadget_of[v].kind == k) out.push_back(v);
    return out;
}

int other_end(const GadgetGraph& g, int e, int v) {
    const Edge& ed = g.dps.graph.edge(e);
    return ed.u == v ? ed.v : ed.u;
}

int edge_labelled(const GadgetGraph& g, int v, const std::string& label) {
    for (int e : g.dps.graph.incident(v))
        if (g.edge_label[e] == label) return e;
    FAIL("no edge " << label << " at person " << v);
    return -1;
}

std::vector<int> days_of_edge(const Schedule& s, int e) {
    std::vector<int> out;
    for (std::int64_t t = 0; t < s.period(); ++t)
        for (int x : s.at(t))
            if (x == e) out.push_back(static_cast<int>(t));
    return out;
}

// Satisfying assignment by trying all 2^n, or none.
std::optional<Assignment> solve(const CnfFormula& f) {
    for (std::uint32_t mask = 0; mask < (1u << f.num_vars); ++mask) {
        Assignment a;
        for (int i = 0; i < f.num_vars; ++i) a.values.push_back(mask >> i & 1);
        if (satisfies(f, a)) return a;
    }
    return std::nullopt;
}

CnfFormula random_formula(Rng& rng, int max_vars, int max_clauses) {
    CnfFormula f;
    f.num_vars = static_cast<int>(rng.uniform(1, max_vars));
    const int m = static_cast<int>(rng.uniform(1, max_clauses));
    for (int j = 0; j < m; ++j) {
        std::vector<Literal> c;
        const int k = static_cast<int>(rng.uniform(1, 3));
        for (int q = 0; q < k; ++q) c.push_back({static_cast<int>(rng.uniform(0, f.num_vars - 1)), rng.bits() % 2 == 1});
        f.clauses.push_back(c);
    }
    return f;
}

}  // namespace

TEST_CASE("dimacs parsing", "[cnf]") {
    auto f = parse_dimacs("p cnf 1 1\n1 0\n");
    CHECK(f.num_vars == 1);
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0] == std::vector<Literal>{{0, false}});

    f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n");
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0] == std::vector<Literal>{{0, false}, {1, false}});
    CHECK(f.clauses[1] == std::vector<Literal>{{0, true}});

    f = worked_example();
    CHECK(f.num_vars == 3);
    CHECK(f.clauses.size() == 4);
    CHECK(f.clauses[2] == std::vector<Literal>{{0, false}, {1, true}, {2, false}});
    CHECK(parse_dimacs(to_dimacs(f)) == f);

    f = parse_dimacs("c comment\np cnf 3 2\n1 -2\n3 0 2 0\n");
    CHECK(f.clauses.size() == 2);
    CHECK(f.clauses[0].size() == 3);
}

TEST_CASE("dimacs errors carry line numbers", "[cnf]") {
    auto line_of = [](const std::string& text) {
        try {
            parse_dimacs(text);
        } catch (const ParseError& e) {
            return e.location;
        }
        return std::string("none");
    };
    CHECK(line_of("p cnf 4 1\n1 2 3 4 0\n") == "line 2");
    CHECK(line_of("p cnf 2 1\n1 x 0\n") == "line 2");
    CHECK(line_of("1 0\n") == "line 1");
    CHECK(line_of("p cnf 2 1\n3 0\n") == "line 2");
    CHECK(line_of("p cnf 2 2\n1 0\n") != "none");
    CHECK(line_of("p cnf 2 1\n0\n") == "line 2");
}

TEST_CASE("assignment files", "[cnf]") {
    auto a = parse_assignment("1\n-2\n+3\n", 3);
    CHECK(a.values == std::vector<bool>{true, false, true});
    CHECK_THROWS_AS(parse_assignment("1\n", 2), ParseError);
    CHECK_THROWS_AS(parse_assignment("1\n-1\n", 1), ParseError);
    CHECK_THROWS_AS(parse_assignment("4\n", 3), ParseError);
}

TEST_CASE("single clause polycule", "[reduction]") {
    auto g = build_polycule(parse_dimacs("p cnf 1 1\n1 0\n"));
    CHECK(people_of(g, GadgetKind::Variable).size() == 1);
    CHECK(people_of(g, GadgetKind::TrueClock).size() == 1);
    auto ors = people_of(g, GadgetKind::Or);
    REQUIRE(ors.size() == 1);
    auto tensions = people_of(g, GadgetKind::Tension);
    REQUIRE(tensions.size() == 1);

    // two inverters padded with constant blue
    int blue_inputs = 0;
    for (int v : people_of(g, GadgetKind::Inverter))
        for (int e : g.dps.graph.incident(v))
            if (g.dps.freq[e] == 3 && g.expected_color[e] == kBlue) ++blue_inputs;
    CHECK(blue_inputs == 2);

    int pendants = 0, or_inputs = 0;
    for (int e : g.dps.graph.incident(tensions[0])) {
        if (g.dps.freq[e] != 12) continue;
        const int w = other_end(g, e, tensions[0]);
        if (g.gadget_of[w].kind == GadgetKind::Pendant) ++pendants;
        if (w == ors[0]) ++or_inputs;
    }
    CHECK(pendants == 3);
    CHECK(or_inputs == 1);
    CHECK(*std::max_element(g.dps.freq.begin(), g.dps.freq.end()) == 12);
    CHECK(check_structure(g).ok());
}

TEST_CASE("worked example polycule", "[reduction]") {
    auto g = build_polycule(worked_example());
    auto ors = people_of(g, GadgetKind::Or);
    CHECK(ors.size() == 4);
    auto tensions = people_of(g, GadgetKind::Tension);
    REQUIRE(tensions.size() == 1);
    std::set<int> fed;
    for (int e : g.dps.graph.incident(tensions[0]))
        if (g.dps.freq[e] == 12) fed.insert(other_end(g, e, tensions[0]));
    CHECK(fed == std::set<int>(ors.begin(), ors.end()));
    auto r = check_structure(g);
    CHECK(r.ok());
    CHECK(r.max_freq == 12);
    CHECK_FALSE(solve(worked_example()));
}

TEST_CASE("every compiled polycule passes the structural checks", "[reduction]") {
    Rng rng(17);
    for (int it = 0; it < 150; ++it) {
        auto f = random_formula(rng, 8, 14);
        auto g = build_polycule(f);
        auto r = check_structure(g);
        INFO(to_dimacs(f));
        for (const auto& msg : r.failures) INFO(msg);
        CHECK(r.ok());
        for (const auto& e : g.dps.graph.edges()) CHECK(g.sex[e.u] != g.sex[e.v]);
    }
}

TEST_CASE("polycule size grows linearly", "[reduction]") {
    // one variable shared by every clause stresses the duplicators
    for (int m : {1, 8, 64, 300}) {
        CnfFormula f{1, {}};
        for (int j = 0; j < m; ++j) f.clauses.push_back({{0, false}, {0, true}, {0, false}});
        auto r = check_structure(build_polycule(f));
        CHECK(r.ok());
        CHECK(r.people <= kSizePerSymbol * (1 + m) + kSizeBase);
    }
    CnfFormula wide{200, {}};
    for (int i = 0; i + 2 < 200; i += 3) wide.clauses.push_back({{i, false}, {i + 1, true}, {i + 2, false}});
    CHECK(check_structure(build_polycule(wide)).ok());
}

TEST_CASE("polycule frequencies convert to growth rates 1/12..1/3", "[reduction]") {
    auto ops = dps_to_ops(build_polycule(worked_example()).dps);
    CHECK(*std::max_element(ops.growth.begin(), ops.growth.end()) == frac(1, 3));
    CHECK(*std::min_element(ops.growth.begin(), ops.growth.end()) == frac(1, 12));
}

TEST_CASE("witness for a true literal", "[reduction]") {
    auto g = build_polycule(parse_dimacs("p cnf 1 1\n1 0\n"));
    auto s = witness_schedule(g, Assignment{{true}});
    CHECK(s.period() == 36);
    CHECK(validate_dps(s, g.dps).empty());
    CHECK(slot_violations(g, s).empty());
    const int x = people_of(g, GadgetKind::Variable)[0];
    for (int t : days_of_edge(s, edge_labelled(g, x, "3_1R"))) CHECK(t % 3 == 0);
    CHECK(days_of_edge(s, edge_labelled(g, x, "3_1R")).size() == 12);
}

TEST_CASE("witness for a negated literal", "[reduction]") {
    auto g = build_polycule(parse_dimacs("p cnf 1 1\n-1 0\n"));
    auto s = witness_schedule(g, Assignment{{false}});
    CHECK(validate_dps(s, g.dps).empty());
    const int x = people_of(g, GadgetKind::Variable)[0];
    for (int t : days_of_edge(s, edge_labelled(g, x, "3_1B"))) CHECK(slot_color(t) == SlotColor::Red);
    for (int t : days_of_edge(s, edge_labelled(g, x, "3_1R"))) CHECK(slot_color(t) == SlotColor::Blue);
}

TEST_CASE("witness puts the clause output in blue slots", "[reduction]") {
    auto g = build_polycule(parse_dimacs("p cnf 2 1\n1 2 0\n"));
    auto s = witness_schedule(g, Assignment{{false, true}});
    CHECK(validate_dps(s, g.dps).empty());
    CHECK(slot_violations(g, s).empty());
    const int o = people_of(g, GadgetKind::Or)[0];
    const auto days = days_of_edge(s, edge_labelled(g, o, "12_O"));
    CHECK(days.size() == 3);
    for (int t : days) CHECK(slot_color(t) == SlotColor::Blue);
}

TEST_CASE("witness rejects a falsifying assignment", "[reduction]") {
    auto g = build_polycule(parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n"));
    CHECK_THROWS_AS(witness_schedule(g, Assignment{{true, false}}), PreconditionError);
    CHECK_THROWS_AS(witness_schedule(g, Assignment{{true}}), InvalidInput);
    CHECK_NOTHROW(witness_schedule(g, Assignment{{false, true}}));
}

TEST_CASE("witnesses for random satisfiable formulas", "[reduction]") {
    Rng rng(29);
    int checked = 0;
    for (int it = 0; it < 120; ++it) {
        auto f = random_formula(rng, 6, 10);
        auto a = solve(f);
        if (!a) continue;
        auto g = build_polycule(f);
        auto s = witness_schedule(g, *a);
        INFO(to_dimacs(f));
        CHECK(validate_dps(s, g.dps).empty());
        CHECK(slot_violations(g, s).empty());
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("corrupted polycules fail the structural checks", "[reduction]") {
    const auto base = build_polycule(parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n"));
    REQUIRE(check_structure(base).ok());

    auto g = base;
    const int o = people_of(g, GadgetKind::Or)[0];
    g.sex[o] = opposite(g.sex[o]);
    auto r = check_structure(g);
    CHECK_FALSE(r.ok());
    CHECK(std::any_of(r.failures.begin(), r.failures.end(),
                      [](const std::string& s) { return s.find("bipartite") != std::string::npos; }));

    g = base;
    auto freq = g.dps.freq;
    freq[edge_labelled(g, o, "12_O")] = 13;
    g.dps = DpsInstance(g.dps.graph, freq);
    r = check_structure(g);
    CHECK(std::any_of(r.failures.begin(), r.failures.end(),
                      [](const std::string& s) { return s.find("exceeds 12") != std::string::npos; }));

    g = base;
    freq = g.dps.freq;
    freq[edge_labelled(g, o, "12_O")] = 6;
    g.dps = DpsInstance(g.dps.graph, freq);
    r = check_structure(g);
    CHECK(std::any_of(r.failures.begin(), r.failures.end(),
                      [](const std::string& s) { return s.find("local density") != std::string::npos; }));
}
