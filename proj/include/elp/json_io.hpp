#ifndef ELP_JSON_IO_HPP
#define ELP_JSON_IO_HPP

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "elp/action_model.hpp"
#include "elp/formula.hpp"
#include "elp/kripke.hpp"
#include "elp/universe.hpp"

namespace elp {

// ── JSON serialization ──────────────────────────────────────────────
//
// Epistemic states:
//   {"agents":[…],"atoms":[…],"states":[…],
//    "rel":{"a":[["s","t"],…]},"val":{"p":["s",…]},"actual":"s"}
// Pointed action models use "events" and "pre" (event → formula text)
// instead of "states"/"val".  Saving is canonical: object keys and id
// arrays sorted, two-space indent, trailing newline, so save∘load is
// byte-identical.

namespace detail {

using nlohmann::json;

inline json universe_json(const Universe& u) {
    json j;
    j["agents"] = u.agents;  // already sorted
    j["atoms"] = u.atoms;
    return j;
}

inline Universe universe_from(const json& j) {
    return Universe(j.at("agents").get<std::vector<std::string>>(),
                    j.at("atoms").get<std::vector<std::string>>());
}

inline json rel_json(const std::map<std::string, EdgeSet>& rel,
                     const Universe& uni) {
    json j = json::object();
    for (const auto& a : uni.agents) j[a] = json::array();
    for (const auto& [a, es] : rel) {
        json arr = json::array();
        for (const auto& [u, v] : es) arr.push_back({u, v});
        j[a] = arr;
    }
    return j;
}

inline std::map<std::string, EdgeSet> rel_from(const json& j) {
    std::map<std::string, EdgeSet> rel;
    for (const auto& [a, arr] : j.items()) {
        EdgeSet es;
        for (const auto& e : arr) {
            if (!e.is_array() || e.size() != 2)
                throw ElpError("rel entries must be [from,to] pairs");
            es.insert({e[0].get<std::string>(), e[1].get<std::string>()});
        }
        rel[a] = std::move(es);
    }
    return rel;
}

}  // namespace detail

inline nlohmann::json to_json(const KripkeState& ms) {
    nlohmann::json j = detail::universe_json(ms.model.uni);
    auto states = ms.model.states;
    std::sort(states.begin(), states.end());
    j["states"] = states;
    j["rel"] = detail::rel_json(ms.model.rel, ms.model.uni);
    nlohmann::json val = nlohmann::json::object();
    for (const auto& [p, ss] : ms.model.val)
        val[p] = std::vector<std::string>(ss.begin(), ss.end());
    j["val"] = val;
    j["actual"] = ms.actual;
    return j;
}

inline nlohmann::json to_json(const PointedAction& ns) {
    nlohmann::json j = detail::universe_json(ns.model.uni);
    auto events = ns.model.events;
    std::sort(events.begin(), events.end());
    j["events"] = events;
    j["rel"] = detail::rel_json(ns.model.rel, ns.model.uni);
    nlohmann::json pre = nlohmann::json::object();
    for (const auto& [e, f] : ns.model.pre) pre[e] = print_formula(f);
    j["pre"] = pre;
    j["actual"] = ns.actual;
    return j;
}

inline KripkeState kripke_from_json(const nlohmann::json& j) {
    KripkeState ms;
    ms.model.uni = detail::universe_from(j);
    ms.model.states = j.at("states").get<std::vector<std::string>>();
    ms.model.rel = detail::rel_from(j.at("rel"));
    for (const auto& a : ms.model.uni.agents)
        ms.model.rel.try_emplace(a);
    if (j.contains("val"))
        for (const auto& [p, arr] : j.at("val").items()) {
            std::set<std::string> ss;
            for (const auto& s : arr) ss.insert(s.get<std::string>());
            ms.model.val[p] = std::move(ss);
        }
    ms.actual = j.at("actual").get<std::string>();
    ms.model.validate_refs();
    if (!ms.model.has_state(ms.actual))
        throw ElpError("actual state not declared: " + ms.actual);
    return ms;
}

inline PointedAction action_from_json(const nlohmann::json& j) {
    PointedAction ns;
    ns.model.uni = detail::universe_from(j);
    ns.model.events = j.at("events").get<std::vector<std::string>>();
    ns.model.rel = detail::rel_from(j.at("rel"));
    for (const auto& a : ns.model.uni.agents)
        ns.model.rel.try_emplace(a);
    for (const auto& [e, f] : j.at("pre").items())
        ns.model.pre[e] = parse_formula(f.get<std::string>(), ns.model.uni);
    ns.actual = j.at("actual").get<std::string>();
    ns.model.validate_refs();
    if (!ns.model.has_event(ns.actual))
        throw ElpError("actual event not declared: " + ns.actual);
    return ns;
}

/// Detect which schema a JSON value uses.
inline bool is_action_json(const nlohmann::json& j) {
    return j.contains("events");
}

inline std::string dump_canonical(const nlohmann::json& j) {
    return j.dump(2) + "\n";
}

template <typename T>
inline void save_json(const T& obj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ElpError("cannot write " + path);
    out << dump_canonical(to_json(obj));
}

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ElpError("cannot read " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

}  // namespace elp

#endif  // ELP_JSON_IO_HPP
