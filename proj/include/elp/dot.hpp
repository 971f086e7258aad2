#ifndef ELP_DOT_HPP
#define ELP_DOT_HPP

#include <map>
#include <sstream>
#include <string>

#include "elp/action_model.hpp"
#include "elp/kripke.hpp"

namespace elp {

// ── Graphviz export ─────────────────────────────────────────────────
//
// One node per state/event (the point drawn doubled), one edge per
// relation pair labeled with its agent; parallel edges between the same
// pair collapse into a comma-separated label.

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline void dot_edges(std::ostream& os,
                      const std::map<std::string, EdgeSet>& rel) {
    std::map<std::pair<std::string, std::string>, std::string> lab;
    for (const auto& [a, es] : rel)
        for (const auto& e : es) {
            auto& l = lab[e];
            if (!l.empty()) l += ",";
            l += a;
        }
    for (const auto& [e, l] : lab)
        os << "  \"" << dot_escape(e.first) << "\" -> \""
           << dot_escape(e.second) << "\" [label=\"" << dot_escape(l)
           << "\"];\n";
}

}  // namespace detail

inline std::string to_dot(const KripkeState& ms) {
    std::ostringstream os;
    os << "digraph epistemic_state {\n  rankdir=LR;\n";
    for (const auto& s : ms.model.states) {
        std::string atoms;
        for (const auto& [p, ss] : ms.model.val)
            if (ss.count(s)) {
                if (!atoms.empty()) atoms += ",";
                atoms += p;
            }
        os << "  \"" << detail::dot_escape(s) << "\" [label=\""
           << detail::dot_escape(s + "\n" + (atoms.empty() ? "-" : atoms))
           << "\"";
        if (s == ms.actual) os << ", peripheries=2";
        os << "];\n";
    }
    detail::dot_edges(os, ms.model.rel);
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const PointedAction& ns) {
    std::ostringstream os;
    os << "digraph action_model {\n  rankdir=LR;\n";
    for (const auto& e : ns.model.events) {
        os << "  \"" << detail::dot_escape(e) << "\" [label=\""
           << detail::dot_escape(e + "\n" + print_formula(ns.model.pre_of(e)))
           << "\"";
        if (e == ns.actual) os << ", peripheries=2";
        os << "];\n";
    }
    detail::dot_edges(os, ns.model.rel);
    os << "}\n";
    return os.str();
}

}  // namespace elp

#endif  // ELP_DOT_HPP
