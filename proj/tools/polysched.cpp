// polysched: command-line front end for the scheduling library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 refused (size guard or unmet hypothesis).

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "polysched/coloring.hpp"
#include "polysched/converters.hpp"
#include "polysched/density.hpp"
#include "polysched/gadget_verify.hpp"
#include "polysched/instances.hpp"
#include "polysched/io.hpp"
#include "polysched/oracle.hpp"
#include "polysched/reduction.hpp"
#include "polysched/schedulers.hpp"

using namespace polysched;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kRefused = 3 };

struct VerifyFailed : Error {
    Json report;
    VerifyFailed(const std::string& msg, Json r) : Error(msg), report(std::move(r)) {}
};

std::string sha256_file(const std::string& path) {
    const std::string data = detail::slurp(path);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw Error("sha256 failed");
    std::ostringstream out;
    for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return out.str();
}

// Records what a run read so that a manifest can be written next to each output.
struct Run {
    std::vector<std::string> argv;
    std::string subcommand;
    Json params = Json::object();
    std::optional<std::uint64_t> seed;
    Json inputs = Json::array();

    void input(const std::string& path) { inputs.push_back({{"path", path}, {"sha256", sha256_file(path)}}); }

    Json manifest() const {
        Json j{{"tool", "polysched"}, {"version", kVersion}, {"subcommand", subcommand},
               {"argv", argv},        {"parameters", params}, {"inputs", inputs}};
        j["seed"] = seed ? Json(*seed) : Json(nullptr);
        return j;
    }
};

Run g_run;

void emit(const std::string& path, const Json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    write_json(path, j);
    write_json(path + ".manifest.json", g_run.manifest());
}

void emit_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    detail::spit(path, text);
    write_json(path + ".manifest.json", g_run.manifest());
}

AnyInstance load_instance(const std::string& path) {
    g_run.input(path);
    return read_instance(path);
}

Schedule load_schedule(const std::string& path) {
    g_run.input(path);
    return read_schedule(path);
}

std::uint64_t oracle_guard(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("POLYSCHED_GUARD")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) throw InvalidInput("POLYSCHED_GUARD must be a positive integer");
        return v;
    }
    return kDefaultStateGuard;
}

Json rat(const Rational& r) { return to_string(r); }

Json rats(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(to_string(r));
    return out;
}

Json heat_json(const HeatReport& h, const OpsInstance& inst) {
    Json per = Json::array();
    for (int e = 0; e < inst.num_edges(); ++e) {
        const auto& eh = h.per_edge[e];
        per.push_back({{"edge", e},
                       {"recurrence", eh.recurrence ? Json(*eh.recurrence) : Json(nullptr)},
                       {"heat", eh.contribution ? rat(*eh.contribution) : Json(nullptr)}});
    }
    return {{"heat", h.heat ? rat(*h.heat) : Json(nullptr)}, {"gstar", rat(gstar(inst))}, {"per_edge", per}};
}

// --- verification ----------------------------------------------------------

// Checks a periodic schedule against an instance. DPS: every window of f_e
// days holds e. OPS: every day a matching, every edge present, heat within
// the optional bound. With expected colours, every edge stays in its slots.
Json verify_schedule(const AnyInstance& inst, const Schedule& s, const std::optional<Rational>& max_heat,
                     const std::vector<ColorMask>* colors = nullptr) {
    Json report;
    std::vector<std::string> problems;
    if (const auto* dps = std::get_if<DpsInstance>(&inst)) {
        for (const auto& v : validate_dps(s, *dps)) problems.push_back(v.message());
        report["kind"] = "dps";
    } else {
        const auto& ops = std::get<OpsInstance>(inst);
        report["kind"] = "ops";
        try {
            auto h = heat(s, ops);
            report["heat"] = heat_json(h, ops);
            if (h.infinite()) problems.push_back("some edge is never scheduled; heat is unbounded");
            else if (max_heat && *h.heat > *max_heat)
                problems.push_back("heat " + to_string(*h.heat) + " exceeds " + to_string(*max_heat));
        } catch (const ValidationError& e) {
            problems.push_back(e.what());
        }
    }
    if (colors) {
        if (colors->size() != static_cast<std::size_t>(std::visit([](const auto& i) { return i.num_edges(); }, inst)))
            throw InvalidInput("gadget map does not match the instance");
        for (std::int64_t t = 0; t < s.period(); ++t)
            for (int e : s.at(t))
                if (e >= 0 && e < static_cast<int>(colors->size()) && !allows((*colors)[e], slot_color(t)))
                    problems.push_back("day " + std::to_string(t) + ": edge " + std::to_string(e) + " outside its " +
                                       "expected slot colours");
    }
    report["period"] = s.period();
    report["valid"] = problems.empty();
    report["violations"] = problems;
    if (!problems.empty()) throw VerifyFailed(problems.front(), report);
    return report;
}

// Recomputes the heat of a finite prefix and compares it with the trace.
Json verify_prefix(const OpsInstance& inst, const RfTrace& tr) {
    PrefixHeat p;
    try {
        p = prefix_heat(tr.schedule_prefix, inst);
    } catch (const ValidationError& e) {
        throw VerifyFailed(e.what(), {{"valid", false}, {"violations", {e.what()}}});
    }
    Json report{{"valid", p.max_heat == tr.max_heat_seen}, {"recomputed_max_heat", rat(p.max_heat)}};
    if (p.max_heat != tr.max_heat_seen)
        throw VerifyFailed("recomputed prefix heat " + to_string(p.max_heat) + " differs from the trace", report);
    return report;
}

std::vector<ColorMask> colors_from_gadget_map(const Json& j) {
    if (!j.is_object() || !j.contains("edges") || !j["edges"].is_array())
        throw ParseError("/edges", "gadget map needs an edges array");
    std::vector<ColorMask> out;
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        const Json& e = j["edges"][i];
        const std::string where = "/edges/" + std::to_string(i) + "/expected";
        if (!e.contains("expected") || !e["expected"].is_array()) throw ParseError(where, "expected a colour list");
        ColorMask m = 0;
        for (const auto& c : e["expected"]) {
            if (!c.is_string()) throw ParseError(where, "colour names are strings");
            try {
                m |= mask_of(parse_color(c.get<std::string>()));
            } catch (const InvalidInput& err) {
                throw ParseError(where, err.what());
            }
        }
        out.push_back(m);
    }
    return out;
}

Json gadget_map(const GadgetGraph& g) {
    Json people = Json::array();
    for (int v = 0; v < g.dps.graph.num_people(); ++v) {
        Json p{{"sex", sex_name(g.sex[v])}, {"gadget", kind_name(g.gadget_of[v].kind)}};
        if (g.gadget_of[v].index >= 0) p["index"] = g.gadget_of[v].index + 1;
        people.push_back(p);
    }
    Json edges = Json::array();
    for (int e = 0; e < g.dps.num_edges(); ++e) {
        Json colors = Json::array();
        for (auto c : colors_in(g.expected_color[e])) colors.push_back(color_name(c));
        edges.push_back({{"label", g.edge_label[e]}, {"expected", colors}});
    }
    return {{"people", people}, {"edges", edges}, {"tensions", g.num_tensions}};
}

Json structure_json(const StructureReport& r) {
    return {{"ok", r.ok()},
            {"people", r.people},
            {"edges", r.edges},
            {"max_freq", r.max_freq},
            {"size_budget", r.size_budget},
            {"failures", r.failures}};
}

Json density_json(const DensityReport& r) {
    Json ms = Json::array();
    for (std::size_t i = 0; i < r.matchings.matchings.size(); ++i)
        if (r.witness_y[i] != 0) ms.push_back({{"edges", r.matchings.matchings[i]}, {"y", rat(r.witness_y[i])}});
    return {{"value", rat(r.value)},
            {"primal_value", rat(r.primal_value)},
            {"gstar", rat(r.gstar)},
            {"lower", rat(r.lower)},
            {"upper", rat(r.upper)},
            {"within_bounds", r.within_bounds()},
            {"strictly_below_upper", r.strictly_below_upper()},
            {"witness_z", rats(r.witness_z)},
            {"witness_y", ms},
            {"maximal_matchings", r.matchings.matchings.size()}};
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string fixed4(double x) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << x;
    return out.str();
}

// --- bench -----------------------------------------------------------------

struct BenchItem {
    std::string name;
    OpsInstance inst;
};

std::string bench_csv(const std::vector<BenchItem>& items, const Rational& x, std::int64_t horizon, std::uint64_t guard) {
    std::ostringstream out;
    out << "instance,people,edges,gstar,optimal,baseline,rf_heat,rf_ratio,colorrr_heat,colorrr_ratio\n";
    for (const auto& it : items) {
        const Rational gs = gstar(it.inst);
        std::optional<Rational> opt;
        try {
            opt = optimal_heat(it.inst, guard);
        } catch (const Refused&) {
        }
        const Rational base = opt ? *opt : gs;
        RfConfig cfg;
        cfg.x = x;
        cfg.horizon = horizon;
        const auto tr = reduce_fastest(it.inst, cfg);
        verify_prefix(it.inst, tr);
        const Schedule rr = colored_round_robin(it.inst.graph);
        const auto hr = heat(rr, it.inst);
        verify_schedule(it.inst, rr, std::nullopt);
        out << it.name << "," << it.inst.graph.num_people() << "," << it.inst.num_edges() << "," << to_string(gs) << ","
            << (opt ? to_string(*opt) : "") << "," << (opt ? "optimal" : "gstar") << "," << to_string(tr.max_heat_seen)
            << "," << fixed4(to_double(tr.max_heat_seen / base)) << "," << to_string(*hr.heat) << ","
            << fixed4(to_double(*hr.heat / base)) << "\n";
    }
    return out.str();
}

std::vector<int> read_tie_order(const std::string& path) {
    g_run.input(path);
    Json j = detail::parse_text(detail::slurp(path));
    if (j.is_object() && j.contains("tie_order")) j = j["tie_order"];
    if (!j.is_array()) throw ParseError("/", "expected an array of edge indices");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(static_cast<int>(detail::get_int(j[i], "/" + std::to_string(i))));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    g_run.argv.assign(argv + 1, argv + argc);
    CLI::App app{"Polyamorous scheduling toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string out_path;
    std::function<int()> action;

    // gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    int stars_d = 4;
    auto* gen_stars = gen->add_subcommand("stars", "Disjoint stars; star i has i edges of growth 1/i");
    gen_stars->add_option("--d", stars_d, "Number of stars")->capture_default_str();
    gen_stars->add_option("-o,--output", out_path, "Output file (stdout if omitted)");
    gen_stars->callback([&] { action = [&] { emit(out_path, to_json(gen_disjoint_stars(stars_d))); return kOk; }; });

    int kn_n = 11;
    std::string tie_out;
    auto* gen_kn = gen->add_subcommand("kn", "Complete graph K_n with growth 1/(n-1) and an adversarial tie order");
    gen_kn->add_option("--n", kn_n, "Odd number of people")->capture_default_str();
    gen_kn->add_option("-o,--output", out_path, "Instance output file");
    gen_kn->add_option("--tie-order-out", tie_out, "Write the tie order (JSON array) here");
    gen_kn->callback([&] {
        action = [&] {
            auto a = gen_kn_adversarial(kn_n);
            emit(out_path, to_json(a.inst));
            if (!tie_out.empty()) emit(tie_out, a.tie_order);
            else std::cerr << "tie order: " << Json(a.tie_order).dump() << "\n";
            return kOk;
        };
    });

    RandomParams rp;
    std::uint64_t seed = 1;
    std::string kind = "ops", edge_prob = "1/2", cap;
    auto* gen_random = gen->add_subcommand("random", "Seeded random instance");
    gen_random->add_option("--seed", seed)->capture_default_str();
    gen_random->add_option("--kind", kind)->check(CLI::IsMember({"ops", "dps"}))->capture_default_str();
    gen_random->add_option("--people", rp.people)->capture_default_str();
    gen_random->add_option("--edge-prob", edge_prob, "Rational edge probability")->capture_default_str();
    gen_random->add_option("--max-den", rp.max_den, "OPS: growth a/b with b <= max-den")->capture_default_str();
    gen_random->add_option("--min-freq", rp.min_freq)->capture_default_str();
    gen_random->add_option("--max-freq", rp.max_freq)->capture_default_str();
    gen_random->add_flag("--pow2", rp.power_of_two, "DPS: powers of two only");
    gen_random->add_option("--cap", cap, "DPS: reject draws with local density above this rational");
    gen_random->add_option("--attempts", rp.max_attempts)->capture_default_str();
    gen_random->add_option("-o,--output", out_path);
    gen_random->callback([&] {
        action = [&] {
            g_run.seed = seed;
            rp.edge_prob = parse_rational(edge_prob);
            if (!cap.empty()) rp.density_cap = parse_rational(cap);
            if (kind == "ops") emit(out_path, to_json(gen_random_ops(seed, rp)));
            else emit(out_path, to_json(gen_random_dps(seed, rp)));
            return kOk;
        };
    });

    // convert -----------------------------------------------------------
    std::string in_path, to_kind, heat_target;
    auto* convert = app.add_subcommand("convert", "Convert between OPS and DPS");
    convert->add_option("--to", to_kind)->required()->check(CLI::IsMember({"ops", "dps"}));
    convert->add_option("--heat", heat_target, "Target heat h for --to dps");
    convert->add_option("input", in_path)->required();
    convert->add_option("output,-o,--output", out_path, "Output file (stdout if omitted)");
    convert->callback([&] {
        action = [&] {
            auto inst = load_instance(in_path);
            if (to_kind == "dps") {
                if (heat_target.empty()) throw InvalidInput("--to dps needs --heat");
                emit(out_path, to_json(ops_to_dps(expect_ops(inst), parse_rational(heat_target))));
            } else {
                emit(out_path, to_json(dps_to_ops(expect_dps(inst))));
            }
            return kOk;
        };
    });

    // run ---------------------------------------------------------------
    auto* run = app.add_subcommand("run", "Run a scheduler; its output is verified before exit");
    run->require_subcommand(1);
    std::string report_path;

    std::string rf_x = "4", tie_path;
    std::int64_t horizon = 1000;
    auto* run_rf = run->add_subcommand("rf", "Reduce-Fastest(x) on an OPS instance");
    run_rf->add_option("--x", rf_x, "Threshold multiplier (rational)")->capture_default_str();
    run_rf->add_option("--horizon", horizon, "Days to simulate")->capture_default_str();
    run_rf->add_option("--tie-order", tie_path, "JSON array of edge indices");
    run_rf->add_option("input", in_path)->required();
    run_rf->add_option("-o,--output", out_path, "Schedule prefix output");
    run_rf->add_option("--report", report_path, "Trace report output (stdout if omitted)");
    run_rf->callback([&] {
        action = [&] {
            const auto inst = expect_ops(load_instance(in_path));
            RfConfig cfg;
            cfg.x = parse_rational(rf_x);
            cfg.horizon = horizon;
            if (!tie_path.empty()) cfg.tie_order = read_tie_order(tie_path);
            const auto tr = reduce_fastest(inst, cfg);
            for (const auto& w : tr.warnings) std::cerr << "warning: " << w << "\n";
            Json check = verify_prefix(inst, tr);
            if (!out_path.empty()) emit(out_path, to_json(Schedule(tr.schedule_prefix)));
            emit(report_path, {{"max_heat_seen", rat(tr.max_heat_seen)},
                               {"day_of_max", tr.day_of_max},
                               {"edge_of_max", tr.edge_of_max},
                               {"gstar", rat(gstar(inst))},
                               {"heats_final", rats(tr.heats_final)},
                               {"warnings", tr.warnings},
                               {"verify", check}});
            return kOk;
        };
    });

    auto dps_scheduler = [&](const char* name, const char* help, Schedule (*fn)(const DpsInstance&)) {
        auto* sc = run->add_subcommand(name, help);
        sc->add_option("input", in_path)->required();
        sc->add_option("-o,--output", out_path, "Schedule output");
        sc->add_option("--report", report_path, "Verification report output (stdout if omitted)");
        sc->callback([&, fn] {
            action = [&, fn] {
                const auto inst = load_instance(in_path);
                const Schedule s = fn(expect_dps(inst));
                Json check = verify_schedule(inst, s, std::nullopt);
                if (!out_path.empty()) emit(out_path, to_json(s));
                emit(report_path, check);
                return kOk;
            };
        });
    };
    dps_scheduler("polygreedy", "PolyGreedy on a DPS instance (power-of-two f, density <= 1/2)", &polygreedy);
    dps_scheduler("lowdensity", "Round down to powers of two, then PolyGreedy (density <= 1/4)", &schedule_low_density);

    auto* run_rr = run->add_subcommand("colorrr", "Coloured round robin on either kind of instance");
    run_rr->add_option("input", in_path)->required();
    run_rr->add_option("-o,--output", out_path, "Schedule output");
    run_rr->add_option("--report", report_path, "Verification report output (stdout if omitted)");
    run_rr->callback([&] {
        action = [&] {
            const auto inst = load_instance(in_path);
            const Graph& g = std::visit([](const auto& i) -> const Graph& { return i.graph; }, inst);
            const Schedule s = colored_round_robin(g);
            if (!out_path.empty()) emit(out_path, to_json(s));
            emit(report_path, verify_schedule(inst, s, std::nullopt));
            return kOk;
        };
    });

    std::string input_schedule;
    auto* run_compact = run->add_subcommand("compact", "Interleave an arbitrary schedule with a colour schedule");
    run_compact->add_option("--input-schedule", input_schedule, "Schedule S_A to compact")->required();
    run_compact->add_option("input", in_path)->required();
    run_compact->add_option("-o,--output", out_path, "Schedule output");
    run_compact->add_option("--report", report_path, "Heat report output (stdout if omitted)");
    run_compact->callback([&] {
        action = [&] {
            const auto inst = load_instance(in_path);
            const auto& ops = expect_ops(inst);
            const Schedule sa = load_schedule(input_schedule);
            const Schedule s = compact(ops, sa.days);
            const Rational bound = 4 * *heat(sa, ops).heat;
            Json check = verify_schedule(inst, s, bound);
            check["input_heat"] = rat(*heat(sa, ops).heat);
            check["bound"] = rat(bound);
            if (!out_path.empty()) emit(out_path, to_json(s));
            emit(report_path, check);
            return kOk;
        };
    });

    // density -----------------------------------------------------------
    bool bounds_only = false;
    int edge_limit = kDefaultMatchingEdgeLimit;
    auto* density = app.add_subcommand("density", "Exact poly density with G* bounds");
    density->add_option("input", in_path)->required();
    density->add_flag("--bounds-only", bounds_only, "Only G*, G* and 3/2 G*");
    density->add_option("--edge-limit", edge_limit, "Refuse exact density above this many edges")->capture_default_str();
    density->add_option("-o,--output", out_path);
    density->callback([&] {
        action = [&] {
            const auto inst = load_instance(in_path);
            const OpsInstance ops = std::holds_alternative<OpsInstance>(inst) ? std::get<OpsInstance>(inst)
                                                                              : dps_to_ops(std::get<DpsInstance>(inst));
            if (bounds_only) {
                auto [lo, hi] = density_bounds(ops);
                emit(out_path, {{"gstar", rat(gstar(ops))}, {"lower", rat(lo)}, {"upper", rat(hi)}});
            } else {
                emit(out_path, density_json(poly_density_ops(ops, edge_limit)));
            }
            return kOk;
        };
    });

    // oracle ------------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "Brute-force ground truth for tiny instances");
    oracle->require_subcommand(1);
    std::optional<std::uint64_t> guard;
    auto* feasible = oracle->add_subcommand("feasible", "Decide DPS feasibility; exit 1 when infeasible");
    feasible->add_option("input", in_path)->required();
    feasible->add_option("--guard", guard, "State-space guard (default: POLYSCHED_GUARD or 5000000)");
    feasible->add_option("-o,--output", out_path);
    feasible->callback([&] {
        action = [&] {
            const auto inst = load_instance(in_path);
            const auto r = dps_feasible(expect_dps(inst), oracle_guard(guard));
            if (r.status == FeasibilityResult::Status::Refused) throw Refused(r.reason);
            Json j{{"feasible", r.feasible()}, {"states_explored", r.states_explored}, {"reason", r.reason}};
            if (r.schedule) j["schedule"] = to_json(*r.schedule), j["verify"] = verify_schedule(inst, *r.schedule, std::nullopt);
            emit(out_path, j);
            return r.feasible() ? kOk : kVerifyFailed;
        };
    });
    auto* opt_heat = oracle->add_subcommand("optimal-heat", "Least achievable heat of a tiny OPS instance");
    opt_heat->add_option("input", in_path)->required();
    opt_heat->add_option("--guard", guard, "State-space guard per feasibility test");
    opt_heat->add_option("-o,--output", out_path);
    opt_heat->callback([&] {
        action = [&] {
            const auto ops = expect_ops(load_instance(in_path));
            const Rational h = optimal_heat(ops, oracle_guard(guard));
            emit(out_path, {{"optimal_heat", rat(h)}, {"gstar", rat(gstar(ops))}});
            return kOk;
        };
    });
    std::uint64_t budget = 200'000'000;
    auto* gv = oracle->add_subcommand("gadget-verify", "Enumerate every gadget's local schedules and check the lemmas");
    gv->add_option("--budget", budget, "Search node budget per gadget")->capture_default_str();
    gv->add_option("-o,--output", out_path);
    gv->callback([&] {
        action = [&] {
            Json rows = Json::array();
            bool ok = true;
            for (const auto& c : verify_gadget_lemmas(budget)) {
                rows.push_back({{"gadget", c.name}, {"schedules", c.schedules}, {"passed", c.passed}, {"claim", c.detail}});
                std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.schedules << " schedules): " << c.detail
                          << "\n";
                ok = ok && c.passed;
            }
            emit(out_path, rows);
            return ok ? kOk : kVerifyFailed;
        };
    });

    // reduce ------------------------------------------------------------
    std::string witness_path, witness_out, gadgets_out;
    auto* reduce = app.add_subcommand("reduce", "Compile a 3-CNF formula (DIMACS) into a bipartite DPS polycule");
    reduce->add_option("formula", in_path)->required();
    reduce->add_option("-o,--output", out_path, "Polycule instance output");
    reduce->add_option("--gadgets", gadgets_out, "Gadget map output (default: <output>.gadgets.json)");
    reduce->add_option("--witness", witness_path, "Satisfying assignment, one signed variable per line");
    reduce->add_option("--witness-out", witness_out, "Witness schedule output (stdout if omitted)");
    reduce->callback([&] {
        action = [&] {
            g_run.input(in_path);
            const auto phi = parse_dimacs(detail::slurp(in_path));
            const auto g = build_polycule(phi);
            const auto r = check_structure(g);
            if (!r.ok()) throw VerifyFailed(r.failures.front(), structure_json(r));
            std::cerr << "polycule: " << r.people << " people, " << r.edges << " edges, max f " << r.max_freq << "\n";
            emit(out_path, to_json(g.dps));
            const std::string map_path = !gadgets_out.empty() ? gadgets_out
                                         : out_path.empty()  ? std::string()
                                                             : out_path + ".gadgets.json";
            if (!map_path.empty()) emit(map_path, gadget_map(g));
            if (!witness_path.empty()) {
                g_run.input(witness_path);
                const auto a = parse_assignment(detail::slurp(witness_path), phi.num_vars);
                if (!satisfies(phi, a)) {
                    std::cerr << "assignment does not satisfy the formula\n";
                    return kVerifyFailed;
                }
                const Schedule s = witness_schedule(g, a);
                verify_schedule(g.dps, s, std::nullopt, &g.expected_color);
                emit(witness_out, to_json(s));
            }
            return kOk;
        };
    });

    // verify ------------------------------------------------------------
    std::string schedule_path, max_heat, gadget_map_path;
    bool prefix = false;
    auto* verify = app.add_subcommand("verify", "Check a schedule against an instance; exit 1 on any violation");
    verify->add_option("instance", in_path)->required();
    verify->add_option("schedule", schedule_path)->required();
    verify->add_option("--max-heat", max_heat, "OPS: also require heat at most this rational");
    verify->add_option("--gadgets", gadget_map_path, "Gadget map; also require slot-respecting days");
    verify->add_flag("--prefix", prefix, "OPS: treat the schedule as a finite prefix and report its running heat");
    verify->add_option("-o,--output", out_path);
    verify->callback([&] {
        action = [&] {
            const auto inst = load_instance(in_path);
            const Schedule s = load_schedule(schedule_path);
            std::optional<Rational> bound;
            if (!max_heat.empty()) bound = parse_rational(max_heat);
            if (prefix) {
                const auto& ops = expect_ops(inst);
                PrefixHeat p;
                try {
                    p = prefix_heat(s.days, ops);
                } catch (const ValidationError& e) {
                    throw VerifyFailed(e.what(), {{"valid", false}, {"violations", {e.what()}}});
                }
                Json j{{"valid", !bound || p.max_heat <= *bound},
                       {"max_heat", rat(p.max_heat)},
                       {"day_of_max", p.day},
                       {"edge_of_max", p.edge}};
                if (bound && p.max_heat > *bound) throw VerifyFailed("prefix heat exceeds the bound", j);
                emit(out_path, j);
                return kOk;
            }
            std::vector<ColorMask> colors;
            if (!gadget_map_path.empty()) {
                g_run.input(gadget_map_path);
                colors = colors_from_gadget_map(detail::parse_text(detail::slurp(gadget_map_path)));
            }
            emit(out_path, verify_schedule(inst, s, bound, gadget_map_path.empty() ? nullptr : &colors));
            return kOk;
        };
    });

    // bench -------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "CSV table of heuristic heats against the best known lower bound");
    bench->require_subcommand(1);
    std::string bench_x = "4";
    std::int64_t bench_horizon = 500;
    bench->add_option("--x", bench_x, "Reduce-Fastest threshold")->capture_default_str();
    bench->add_option("--horizon", bench_horizon, "Reduce-Fastest days")->capture_default_str();
    bench->add_option("--guard", guard, "Oracle guard for the optimal column");
    bench->add_option("-o,--output", out_path, "CSV output (stdout if omitted)");
    int d_max = 4;
    auto* bench_stars = bench->add_subcommand("stars", "Disjoint stars d = 1..d-max");
    bench_stars->fallthrough();
    bench_stars->add_option("--d-max", d_max)->capture_default_str();
    bench_stars->callback([&] {
        action = [&] {
            std::vector<BenchItem> items;
            for (int d = 1; d <= d_max; ++d) items.push_back({"stars-" + std::to_string(d), gen_disjoint_stars(d)});
            emit_text(out_path, bench_csv(items, parse_rational(bench_x), bench_horizon, oracle_guard(guard)));
            return kOk;
        };
    });
    int bench_count = 20;
    RandomParams bp;
    bp.people = 6;
    auto* bench_random = bench->add_subcommand("random", "Seeded random OPS instances");
    bench_random->fallthrough();
    bench_random->add_option("--count", bench_count)->capture_default_str();
    bench_random->add_option("--seed", seed)->capture_default_str();
    bench_random->add_option("--people", bp.people)->capture_default_str();
    bench_random->callback([&] {
        action = [&] {
            g_run.seed = seed;
            std::vector<BenchItem> items;
            for (int i = 0; i < bench_count; ++i)
                items.push_back({"random-" + std::to_string(seed + i), normalize(gen_random_ops(seed + i, bp)).first});
            emit_text(out_path, bench_csv(items, parse_rational(bench_x), bench_horizon, oracle_guard(guard)));
            return kOk;
        };
    });
    std::vector<std::string> bench_files;
    auto* bench_file = bench->add_subcommand("files", "OPS instance files");
    bench_file->fallthrough();
    bench_file->add_option("inputs", bench_files)->required();
    bench_file->callback([&] {
        action = [&] {
            std::vector<BenchItem> items;
            for (const auto& f : bench_files) items.push_back({f, expect_ops(load_instance(f))});
            emit_text(out_path, bench_csv(items, parse_rational(bench_x), bench_horizon, oracle_guard(guard)));
            return kOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    for (auto* sc = app.get_subcommands().front(); sc;
         sc = sc->get_subcommands().empty() ? nullptr : sc->get_subcommands().front()) {
        g_run.subcommand += (g_run.subcommand.empty() ? "" : " ") + sc->get_name();
        for (const auto* opt : sc->get_options()) {
            if (opt->get_name() == "--help") continue;
            const auto& res = opt->results();
            if (!res.empty()) g_run.params[opt->get_name()] = res.size() == 1 ? Json(res[0]) : Json(res);
            else if (!opt->get_default_str().empty()) g_run.params[opt->get_name()] = opt->get_default_str();
        }
    }

    try {
        return action();
    } catch (const VerifyFailed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        std::cout << e.report.dump(2) << "\n";
        return kVerifyFailed;
    } catch (const Refused& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const PreconditionError& e) {
        std::cerr << "refused: hypothesis '" << e.hypothesis << "' does not hold: " << e.what() << "\n";
        return kRefused;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid schedule: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kVerifyFailed;
    }
}
