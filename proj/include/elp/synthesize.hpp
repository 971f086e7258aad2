#ifndef ELP_SYNTHESIZE_HPP
#define ELP_SYNTHESIZE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elp/action_model.hpp"
#include "elp/kd45.hpp"
#include "elp/term.hpp"
#include "elp/transform.hpp"
#include "elp/universe.hpp"

namespace elp {

// ── Program synthesis ───────────────────────────────────────────────
//
// Three constructions, in increasing generality:
//   synthesize_s5   — S5 models become L_A(α₀,…,α_k), where each α_j
//                     is a bundle of wrong-learnings that pins down the
//                     equivalence class of s_j for every agent;
//   synthesize_tree — K45 models whose component graph G(T(N)) is a
//                     tree become μ-free programs, recursing down the
//                     tree and gluing children with wrong-learning;
//   synthesize      — arbitrary K45 models: when the reachable
//                     component graph G(T(N)) is acyclic the tree
//                     construction applies (shared subgraphs are
//                     duplicated), otherwise unwind G(T'(N)) from the
//                     root, cut repeated components into variables, and
//                     close each cut with μ.

namespace detail {

// a variable name that cannot be mistaken for an atom or agent
inline std::string var_name(int i, const Universe& uni) {
    std::string v = "X" + std::to_string(i);
    while (uni.has_atom(v) || uni.has_agent(v)) v = "X" + v;
    return v;
}

inline TermPtr concur_fold(const std::vector<TermPtr>& parts) {
    if (parts.empty()) throw ElpError("concur_fold: empty");
    TermPtr t = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) t = t_concur(t, parts[i]);
    return t;
}

// equivalence classes of ⇀_a restricted to `states` (assumed an
// equivalence relation there); returns class index per state
inline std::map<std::string, int> agent_classes(
    const ActionModel& n, const std::vector<std::string>& states,
    const std::string& a) {
    std::map<std::string, int> cls;
    std::vector<std::set<std::string>> reps;
    for (const auto& s : states) {
        auto succ = n.successors(s, a);
        int found = -1;
        for (std::size_t r = 0; r < reps.size(); ++r)
            if (reps[r].count(s)) found = static_cast<int>(r);
        if (found < 0) {
            found = static_cast<int>(reps.size());
            reps.push_back(succ);
        }
        cls[s] = found;
    }
    return cls;
}

}  // namespace detail

/// S5 pointed action models are always μ-free learnings of the whole
/// agent set; each argument discriminates its state's equivalence class
/// per agent with a distinct test formula.
inline TermPtr synthesize_s5(const PointedAction& ns, const Oracle& oracle) {
    const ActionModel& n = ns.model;
    if (!frame_class(n).is_S5)
        throw ElpError("synthesize_s5: model is not S5");
    if (n.uni.agents.empty())
        throw UniverseTooSmall("synthesize_s5: no agents");

    std::vector<std::string> order{ns.actual};
    for (const auto& s : n.events)
        if (s != ns.actual) order.push_back(s);

    // per-agent class of every state, and the discriminating formulas
    std::map<std::string, std::map<std::string, int>> cls;
    int max_classes = 1;
    for (const auto& a : n.uni.agents) {
        cls[a] = detail::agent_classes(n, n.events, a);
        for (const auto& [s, c] : cls[a])
            max_classes = std::max(max_classes, c + 1);
    }
    auto psi = distinguishing_formulas(max_classes, n.uni);

    AgentSet all(n.uni.agents.begin(), n.uni.agents.end());
    std::vector<TermPtr> args;
    for (const auto& s : order) {
        std::vector<TermPtr> parts;
        for (const auto& a : n.uni.agents)
            parts.push_back(t_wrong(
                n.pre_of(s), {a},
                t_learn({a}, {t_test(psi[static_cast<std::size_t>(
                              cls[a][s])])})));
        args.push_back(detail::concur_fold(parts));
    }
    return t_learn(all, std::move(args));
}

// ── Tree synthesis over T(N) ────────────────────────────────────────

namespace detail {

struct TreeSynth {
    const ActionModel* n;
    const Oracle* oracle;
    TransformResult t;                 // T(N)
    std::vector<FormulaPtr> psi;

    // canonical T-successor of a T-event under an agent
    std::string pick_succ(const std::string& ev, const std::string& a) const {
        auto succ = t.model.successors(ev, a);
        // only cross-component successors matter here
        std::string best;
        for (const auto& u : succ)
            if (t.comp_of.at(u) != t.comp_of.at(ev))
                if (best.empty() || u < best) best = u;
        return best;
    }

    TermPtr build(int comp, const std::string& entry_ev) {
        const Component& c = t.components[static_cast<std::size_t>(comp)];
        std::vector<std::string> states{t.proj.at(entry_ev)};
        for (const auto& s : c.states)
            if (s != states[0]) states.push_back(s);

        // loop-free singleton: no Learn wrapper, just the glue
        if (c.agents.empty()) {
            const std::string& v = states[0];
            std::vector<TermPtr> parts;
            for (const auto& a : n->uni.agents) {
                std::string u = pick_succ(entry_ev, a);
                if (u.empty()) continue;
                parts.push_back(t_wrong(n->pre_of(v), {a},
                                        build(t.comp_of.at(u), u)));
            }
            if (parts.empty()) return t_test(n->pre_of(v));
            return concur_fold(parts);
        }

        // per-agent classes inside the component
        std::vector<std::string> comp_states(c.states.begin(), c.states.end());
        std::map<std::string, std::map<std::string, int>> cls;
        for (const auto& a : c.agents)
            cls[a] = agent_classes(*n, comp_states, a);

        std::vector<TermPtr> args;
        for (const auto& v : states) {
            std::vector<TermPtr> parts;
            for (const auto& a : c.agents)
                parts.push_back(t_wrong(
                    n->pre_of(v), {a},
                    t_learn({a}, {t_test(psi.at(
                                  static_cast<std::size_t>(cls[a][v]))) })));
            std::string ev = t_event_name(v, comp);
            for (const auto& a : n->uni.agents) {
                if (c.agents.count(a)) continue;
                std::string u = pick_succ(ev, a);
                if (u.empty()) continue;
                parts.push_back(t_wrong(n->pre_of(v), {a},
                                        build(t.comp_of.at(u), u)));
            }
            args.push_back(concur_fold(parts));
        }
        return t_learn(c.agents, std::move(args));
    }
};

// The reachable part of a component graph must be a tree rooted at
// `root`: acyclic with a unique parent everywhere.
inline void require_tree(const std::set<std::pair<int, int>>& g, int root) {
    std::map<int, int> indeg;
    std::set<int> seen{root};
    std::vector<int> queue{root};
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        for (const auto& [x, y] : g)
            if (x == u) {
                ++indeg[y];
                if (seen.insert(y).second) queue.push_back(y);
            }
    }
    if (indeg.count(root))
        throw NotATree("root component has an incoming edge");
    for (const auto& [v, d] : indeg)
        if (d > 1) throw NotATree("component has several parents");
}

}  // namespace detail

/// μ-free synthesis for models whose reachable component graph G(T(N))
/// is a tree; throws NotATree otherwise.
inline TermPtr synthesize_tree(const PointedAction& ns, const Oracle& oracle) {
    detail::TreeSynth ts;
    ts.n = &ns.model;
    ts.oracle = &oracle;
    ts.t = t_transform(ns.model);
    std::string w0 = point_for(ts.t, ns.actual);
    int root = ts.t.comp_of.at(w0);

    // restrict the graph to reachable T-events before the tree check
    detail::require_tree(reachable_component_graph(ts.t, w0), root);

    int max_states = 1;
    for (const auto& c : ts.t.components)
        max_states = std::max(max_states, static_cast<int>(c.states.size()));
    ts.psi = distinguishing_formulas(max_states, ns.model.uni);
    return ts.build(root, w0);
}

// ── General synthesis over T'(N) ────────────────────────────────────

namespace detail {

struct GeneralSynth {
    const ActionModel* n;
    TransformResult t;                 // T'(N)
    long budget = 100000;

    // the a-component that is exactly the cluster succ_a(v)
    int cluster_comp(const std::string& v, const std::string& a) const {
        auto cl = n->successors(v, a);
        for (int i = 0; i < static_cast<int>(t.components.size()); ++i) {
            const auto& c = t.components[static_cast<std::size_t>(i)];
            if (c.agents == AgentSet{a} && c.states == cl) return i;
        }
        throw ElpError("cluster has no component (model not K45?)");
    }

    // glue for one state: one wrong-learning per outgoing agent
    TermPtr state_glue(const std::string& v, const AgentSet& skip,
                       const std::set<int>& path) {
        std::vector<TermPtr> parts;
        for (const auto& a : n->uni.agents) {
            if (skip.count(a)) continue;
            if (n->successors(v, a).empty()) continue;
            int d = cluster_comp(v, a);
            TermPtr p = path.count(d)
                            ? t_var(var_name(d, n->uni))
                            : build(d, "", path);
            parts.push_back(t_wrong(n->pre_of(v), {a}, std::move(p)));
        }
        if (parts.empty()) return t_test(n->pre_of(v));
        return concur_fold(parts);
    }

    TermPtr build(int comp, const std::string& entry, std::set<int> path) {
        if (--budget < 0)
            throw ResourceBound("synthesize: unwinding budget exhausted");
        path.insert(comp);
        const Component& c = t.components[static_cast<std::size_t>(comp)];

        if (c.agents.empty())
            return state_glue(*c.states.begin(), {}, path);

        std::vector<std::string> states;
        if (!entry.empty()) states.push_back(entry);
        for (const auto& s : c.states)
            if (s != entry) states.push_back(s);

        std::vector<TermPtr> args;
        for (const auto& v : states)
            args.push_back(state_glue(v, c.agents, path));
        TermPtr term = t_learn(c.agents, std::move(args));
        std::string x = var_name(comp, n->uni);
        if (free_vars(term).count(x)) term = t_mu(x, term);
        return term;
    }
};

}  // namespace detail

/// Any K45 pointed action model becomes a recursive learning program.
/// When the reachable component graph G(T(N)) is acyclic the μ-free
/// tree construction applies (shared subgraphs are duplicated along
/// each path); otherwise unwind the component graph of T'(N) from the
/// actual's component, replace components repeated along a path by
/// variables, and bind each cut variable with μ.  The output is μ-free
/// exactly when the reachable component graph is acyclic.
inline TermPtr synthesize(const PointedAction& ns, const Oracle& oracle) {
    {
        detail::TreeSynth ts;
        ts.n = &ns.model;
        ts.oracle = &oracle;
        ts.t = t_transform(ns.model);
        std::string w0 = point_for(ts.t, ns.actual);
        if (acyclic_graph(reachable_component_graph(ts.t, w0))) {
            int max_states = 1;
            for (const auto& c : ts.t.components)
                max_states =
                    std::max(max_states, static_cast<int>(c.states.size()));
            ts.psi = distinguishing_formulas(max_states, ns.model.uni);
            return ts.build(ts.t.comp_of.at(w0), w0);
        }
    }
    detail::GeneralSynth gs;
    gs.n = &ns.model;
    gs.t = t_prime_transform(ns.model);
    std::string w0 = point_for(gs.t, ns.actual);
    int root = gs.t.comp_of.at(w0);
    const Component& rc = gs.t.components[static_cast<std::size_t>(root)];
    return gs.build(root, rc.agents.empty() ? "" : ns.actual, {});
}

}  // namespace elp

#endif  // ELP_SYNTHESIZE_HPP
