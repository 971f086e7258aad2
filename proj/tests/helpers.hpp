#ifndef ELP_TESTS_HELPERS_HPP
#define ELP_TESTS_HELPERS_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "elp/action_model.hpp"
#include "elp/json_io.hpp"
#include "elp/kripke.hpp"
#include "elp/universe.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

inline elp::PointedAction load_action_fixture(const std::string& name) {
    return elp::action_from_json(elp::load_json(fixture_path(name)));
}

inline elp::KripkeState load_state_fixture(const std::string& name) {
    return elp::kripke_from_json(elp::load_json(fixture_path(name)));
}

/// Expected-program text, stripped of the trailing newline.
inline std::string load_text_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    if (!in) throw elp::ElpError("missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

inline elp::Universe figs_uni() { return {{"a", "b"}, {"p", "q", "r"}}; }
inline elp::Universe bar_uni() { return {{"a", "b"}, {"p"}}; }

inline elp::Oracle kd45_oracle(const elp::Universe& uni) {
    return {elp::Oracle::Mode::Kd45, uni};
}
inline elp::Oracle syntactic_oracle(const elp::Universe& uni) {
    return {elp::Oracle::Mode::Syntactic, uni};
}

// ── Exact isomorphism of pointed action models ──────────────────────
//
// Point-preserving event bijection with syntactically equal
// preconditions and exactly matching edges.  Backtracking search;
// desk-scale inputs only.

namespace detail {

inline bool iso_extend(const elp::ActionModel& m1, const elp::ActionModel& m2,
                       std::map<std::string, std::string>& fwd,
                       std::map<std::string, std::string>& bwd,
                       std::size_t next) {
    if (next == m1.events.size()) {
        for (const auto& [a, es] : m1.rel)
            for (const auto& [u, v] : es) {
                auto it = m2.rel.find(a);
                if (it == m2.rel.end() ||
                    !it->second.count({fwd.at(u), fwd.at(v)}))
                    return false;
            }
        for (const auto& [a, es] : m2.rel)
            for (const auto& [u, v] : es) {
                auto it = m1.rel.find(a);
                if (it == m1.rel.end() ||
                    !it->second.count({bwd.at(u), bwd.at(v)}))
                    return false;
            }
        return true;
    }
    const std::string& e = m1.events[next];
    if (fwd.count(e)) return iso_extend(m1, m2, fwd, bwd, next + 1);
    for (const auto& f : m2.events) {
        if (bwd.count(f)) continue;
        if (elp::print_formula(m1.pre_of(e)) !=
            elp::print_formula(m2.pre_of(f)))
            continue;
        fwd[e] = f;
        bwd[f] = e;
        if (iso_extend(m1, m2, fwd, bwd, next + 1)) return true;
        fwd.erase(e);
        bwd.erase(f);
    }
    return false;
}

}  // namespace detail

inline bool isomorphic(const elp::PointedAction& a,
                       const elp::PointedAction& b) {
    if (a.model.events.size() != b.model.events.size()) return false;
    if (!(a.model.uni == b.model.uni)) return false;
    std::map<std::string, std::string> fwd{{a.actual, b.actual}};
    std::map<std::string, std::string> bwd{{b.actual, a.actual}};
    if (elp::print_formula(a.model.pre_of(a.actual)) !=
        elp::print_formula(b.model.pre_of(b.actual)))
        return false;
    return detail::iso_extend(a.model, b.model, fwd, bwd, 0);
}

}  // namespace testutil

#endif  // ELP_TESTS_HELPERS_HPP
