#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "polysched/core.hpp"

namespace polysched {

using Json = nlohmann::json;
using AnyInstance = std::variant<OpsInstance, DpsInstance>;

namespace detail {

inline void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw ParseError(where, "unknown field '" + k + "'");
    for (const char* k : keys)
        if (!j.contains(k)) throw ParseError(where, std::string("missing field '") + k + "'");
}

inline std::int64_t get_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
    return j.get<std::int64_t>();
}

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

inline Json people_json(const Graph& g) {
    Json people = Json::array();
    for (const auto& p : g.people()) people.push_back(p.label ? Json(*p.label) : Json(nullptr));
    return people;
}

}  // namespace detail

inline Json to_json(const OpsInstance& inst) {
    Json edges = Json::array();
    for (const auto& e : inst.graph.edges())
        edges.push_back({{"u", e.u}, {"v", e.v}, {"g", to_string(inst.growth[e.index])}});
    return {{"kind", "ops"}, {"people", detail::people_json(inst.graph)}, {"edges", edges}};
}

inline Json to_json(const DpsInstance& inst) {
    Json edges = Json::array();
    for (const auto& e : inst.graph.edges()) edges.push_back({{"u", e.u}, {"v", e.v}, {"f", inst.freq[e.index]}});
    return {{"kind", "dps"}, {"people", detail::people_json(inst.graph)}, {"edges", edges}};
}

inline Json to_json(const AnyInstance& inst) {
    return std::visit([](const auto& i) { return to_json(i); }, inst);
}

inline Json to_json(const Schedule& s) {
    Json days = Json::array();
    for (const auto& d : s.days) days.push_back(d);
    return {{"period", s.period()}, {"days", days}};
}

inline AnyInstance instance_from_json(const Json& j) {
    detail::only_keys(j, "/", {"kind", "people", "edges"});
    if (!j["kind"].is_string() || (j["kind"] != "ops" && j["kind"] != "dps"))
        throw ParseError("/kind", "expected \"ops\" or \"dps\"");
    const bool ops = j["kind"] == "ops";
    if (!j["people"].is_array()) throw ParseError("/people", "expected an array");
    std::vector<Person> people;
    for (std::size_t i = 0; i < j["people"].size(); ++i) {
        const Json& p = j["people"][i];
        if (p.is_null()) people.push_back({static_cast<int>(i), std::nullopt});
        else if (p.is_string()) people.push_back({static_cast<int>(i), p.get<std::string>()});
        else throw ParseError("/people/" + std::to_string(i), "expected a label string or null");
    }
    if (!j["edges"].is_array()) throw ParseError("/edges", "expected an array");
    std::vector<std::pair<int, int>> ends;
    std::vector<Rational> growth;
    std::vector<std::int64_t> freq;
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        const std::string where = "/edges/" + std::to_string(i);
        const Json& e = j["edges"][i];
        if (ops) detail::only_keys(e, where, {"u", "v", "g"});
        else detail::only_keys(e, where, {"u", "v", "f"});
        const auto u = detail::get_int(e["u"], where + "/u"), v = detail::get_int(e["v"], where + "/v");
        if (u < 0 || v < 0 || u >= static_cast<std::int64_t>(people.size()) || v >= static_cast<std::int64_t>(people.size()))
            throw ParseError(where, "endpoint out of range");
        ends.emplace_back(static_cast<int>(u), static_cast<int>(v));
        if (ops) {
            if (!e["g"].is_string()) throw ParseError(where + "/g", "expected a rational string such as \"1/3\"");
            try {
                growth.push_back(parse_rational(e["g"].get<std::string>()));
            } catch (const InvalidInput& err) {
                throw ParseError(where + "/g", err.what());
            }
        } else {
            freq.push_back(detail::get_int(e["f"], where + "/f"));
        }
    }
    try {
        Graph g(std::move(people), ends);
        if (ops) return OpsInstance(std::move(g), std::move(growth));
        return DpsInstance(std::move(g), std::move(freq));
    } catch (const InvalidInput& err) {
        throw ParseError("/edges", err.what());
    }
}

inline Schedule schedule_from_json(const Json& j) {
    detail::only_keys(j, "/", {"period", "days"});
    const auto period = detail::get_int(j["period"], "/period");
    if (!j["days"].is_array()) throw ParseError("/days", "expected an array");
    if (period < 1 || static_cast<std::size_t>(period) != j["days"].size())
        throw ParseError("/period", "period must be positive and equal the number of days");
    std::vector<std::vector<int>> days;
    for (std::size_t t = 0; t < j["days"].size(); ++t) {
        const Json& d = j["days"][t];
        const std::string where = "/days/" + std::to_string(t);
        if (!d.is_array()) throw ParseError(where, "expected an array of edge indices");
        std::vector<int> day;
        for (std::size_t k = 0; k < d.size(); ++k) {
            const auto e = detail::get_int(d[k], where + "/" + std::to_string(k));
            if (e < 0) throw ParseError(where + "/" + std::to_string(k), "negative edge index");
            day.push_back(static_cast<int>(e));
        }
        days.push_back(std::move(day));
    }
    return Schedule(std::move(days));
}

inline AnyInstance parse_instance(const std::string& text) { return instance_from_json(detail::parse_text(text)); }
inline Schedule parse_schedule(const std::string& text) { return schedule_from_json(detail::parse_text(text)); }

inline AnyInstance read_instance(const std::string& path) { return parse_instance(detail::slurp(path)); }
inline Schedule read_schedule(const std::string& path) { return parse_schedule(detail::slurp(path)); }

inline void write_json(const std::string& path, const Json& j) { detail::spit(path, j.dump(2) + "\n"); }
inline void write_instance(const std::string& path, const AnyInstance& inst) { write_json(path, to_json(inst)); }
inline void write_schedule(const std::string& path, const Schedule& s) { write_json(path, to_json(s)); }

inline const OpsInstance& expect_ops(const AnyInstance& a) {
    if (auto p = std::get_if<OpsInstance>(&a)) return *p;
    throw InvalidInput("expected an ops instance");
}

inline const DpsInstance& expect_dps(const AnyInstance& a) {
    if (auto p = std::get_if<DpsInstance>(&a)) return *p;
    throw InvalidInput("expected a dps instance");
}

}  // namespace polysched
