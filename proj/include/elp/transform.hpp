#ifndef ELP_TRANSFORM_HPP
#define ELP_TRANSFORM_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elp/action_model.hpp"
#include "elp/universe.hpp"

namespace elp {

// ── Component transforms of K45 action models ───────────────────────
//
// T(N) rearranges a K45 action model into copies of its maximal closed
// connected S5 submodels; T'(N) uses single-agent components (one per
// reflexive cluster).  Both are bisimilar to N via the projection, and
// their component graphs drive synthesis and the hierarchy
// classification.

/// One node of a component decomposition: a set of original events and
/// the agent group the component is S5 over (∅ for the singleton
/// components of loop-free events).
struct Component {
    std::set<std::string> states;
    AgentSet agents;
    bool operator==(const Component&) const = default;
};

struct TransformResult {
    ActionModel model;                      // T(N) resp. T'(N)
    std::vector<Component> components;
    std::map<std::string, int> comp_of;     // T-event -> component index
    std::map<std::string, std::string> proj;  // T-event -> original event
    std::set<std::pair<int, int>> graph;    // G edges between distinct comps
};

namespace detail {

inline std::string t_event_name(const std::string& s, int comp) {
    return s + "@" + std::to_string(comp);
}

// All closed connected S5 submodels of N for a fixed nonempty agent set
// B: the closed mutual-reachability classes of the largest B-reflexive,
// B-closed event set.
inline std::vector<std::set<std::string>> closed_connected(
    const ActionModel& n, const AgentSet& B) {
    std::set<std::string> P;
    for (const auto& s : n.events) {
        bool all_loops = true;
        for (const auto& a : B)
            if (!n.edges(a).count({s, s})) {
                all_loops = false;
                break;
            }
        if (all_loops) P.insert(s);
    }
    // prune until closed under B-successors
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = P.begin(); it != P.end();) {
            bool ok = true;
            for (const auto& a : B)
                for (const auto& t : n.successors(*it, a))
                    if (!P.count(t)) ok = false;
            if (!ok) {
                it = P.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    // mutual-reachability classes within P under B-edges
    auto reach = [&](const std::string& from) {
        std::set<std::string> seen{from};
        std::vector<std::string> queue{from};
        while (!queue.empty()) {
            auto u = queue.back();
            queue.pop_back();
            for (const auto& a : B)
                for (const auto& v : n.successors(u, a))
                    if (P.count(v) && seen.insert(v).second)
                        queue.push_back(v);
        }
        return seen;
    };
    std::map<std::string, std::set<std::string>> rsets;
    for (const auto& s : P) rsets[s] = reach(s);
    std::vector<std::set<std::string>> classes;
    std::set<std::string> assigned;
    for (const auto& s : P) {
        if (assigned.count(s)) continue;
        std::set<std::string> cls{s};
        for (const auto& t : P)
            if (t != s && rsets[s].count(t) && rsets[t].count(s))
                cls.insert(t);
        for (const auto& t : cls) assigned.insert(t);
        // keep only if closed under B-successors
        bool closed = true;
        for (const auto& u : cls)
            for (const auto& a : B)
                for (const auto& v : n.successors(u, a))
                    if (!cls.count(v)) closed = false;
        if (closed) classes.push_back(std::move(cls));
    }
    return classes;
}

inline TransformResult assemble(const ActionModel& n,
                                std::vector<Component> comps,
                                bool t_prime) {
    TransformResult r;
    r.components = std::move(comps);
    r.model.uni = n.uni;
    for (int i = 0; i < static_cast<int>(r.components.size()); ++i)
        for (const auto& s : r.components[static_cast<std::size_t>(i)].states) {
            std::string name = t_event_name(s, i);
            r.model.events.push_back(name);
            r.model.pre[name] = n.pre_of(s);
            r.comp_of[name] = i;
            r.proj[name] = s;
        }
    for (const auto& a : n.uni.agents) r.model.rel[a] = {};

    int k = static_cast<int>(r.components.size());
    for (int i = 0; i < k; ++i) {
        const auto& ci = r.components[static_cast<std::size_t>(i)];
        for (int j = 0; j < k; ++j) {
            const auto& cj = r.components[static_cast<std::size_t>(j)];
            for (const auto& s : ci.states)
                for (const auto& t : cj.states)
                    for (const auto& a : n.uni.agents) {
                        bool edge = false;
                        if (i == j) {
                            edge = ci.agents.count(a) &&
                                   n.edges(a).count({s, t});
                        } else if (t_prime) {
                            // target must be an a-component, source must
                            // not be one
                            edge = cj.agents.count(a) &&
                                   !ci.agents.count(a) &&
                                   n.edges(a).count({s, t});
                        } else {
                            edge = !ci.agents.count(a) &&
                                   cj.agents.count(a) &&
                                   n.edges(a).count({s, t});
                        }
                        if (edge) {
                            r.model.rel[a].insert(
                                {t_event_name(s, i), t_event_name(t, j)});
                            if (i != j) r.graph.insert({i, j});
                        }
                    }
        }
    }
    return r;
}

}  // namespace detail

/// T(N): copies of all maximal closed connected S5 submodels, linked by
/// the original edges into components owning the edge's agent.  Events
/// covered by no reflexive submodel get a singleton ∅-component.
inline TransformResult t_transform(const ActionModel& n) {
    if (!frame_class(n).is_K45)
        throw ElpError("t_transform: model is not K45");
    if (n.uni.agents.size() > 12)
        throw ResourceBound("t_transform: too many agents for subset scan");

    // candidates over all nonempty agent subsets
    std::vector<Component> cands;
    int m = static_cast<int>(n.uni.agents.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
        AgentSet B;
        for (int b = 0; b < m; ++b)
            if (mask & (1 << b)) B.insert(n.uni.agents[static_cast<std::size_t>(b)]);
        for (auto& cls : detail::closed_connected(n, B))
            cands.push_back(Component{std::move(cls), B});
    }
    // maximal under (states ⊆, agents ⊆)
    std::vector<Component> maximal;
    for (const auto& c : cands) {
        bool dominated = false;
        for (const auto& d : cands) {
            if (c == d) continue;
            bool sub = std::includes(d.states.begin(), d.states.end(),
                                     c.states.begin(), c.states.end()) &&
                       std::includes(d.agents.begin(), d.agents.end(),
                                     c.agents.begin(), c.agents.end());
            if (sub) {
                dominated = true;
                break;
            }
        }
        if (!dominated && std::find(maximal.begin(), maximal.end(), c) ==
                              maximal.end())
            maximal.push_back(c);
    }
    // ∅-singletons for events in no maximal component
    for (const auto& s : n.events) {
        bool covered = false;
        for (const auto& c : maximal)
            if (c.states.count(s)) covered = true;
        if (!covered) maximal.push_back(Component{{s}, {}});
    }
    return detail::assemble(n, std::move(maximal), /*t_prime=*/false);
}

/// T'(N): one component per reflexive a-cluster (each agent
/// separately), plus ∅-singletons for events with no loop for any
/// agent.  Every edge points into the target component's own agent.
inline TransformResult t_prime_transform(const ActionModel& n) {
    if (!frame_class(n).is_K45)
        throw ElpError("t_prime_transform: model is not K45");

    std::vector<Component> comps;
    for (const auto& a : n.uni.agents) {
        std::vector<std::set<std::string>> clusters;
        for (const auto& s : n.events) {
            if (!n.edges(a).count({s, s})) continue;
            auto cl = n.successors(s, a);
            if (std::find(clusters.begin(), clusters.end(), cl) ==
                clusters.end())
                clusters.push_back(cl);
        }
        for (auto& cl : clusters)
            comps.push_back(Component{std::move(cl), {a}});
    }
    for (const auto& s : n.events) {
        bool has_loop = false;
        for (const auto& a : n.uni.agents)
            if (n.edges(a).count({s, s})) has_loop = true;
        if (!has_loop) comps.push_back(Component{{s}, {}});
    }
    return detail::assemble(n, std::move(comps), /*t_prime=*/true);
}

/// A T-event projecting to `orig`; among several, prefer a component
/// with a nonempty agent set (smallest first), then the lowest index.
inline std::string point_for(const TransformResult& r,
                             const std::string& orig) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(r.components.size()); ++i) {
        const auto& c = r.components[static_cast<std::size_t>(i)];
        if (!c.states.count(orig)) continue;
        if (best < 0) {
            best = i;
            continue;
        }
        const auto& b = r.components[static_cast<std::size_t>(best)];
        if (b.agents.empty() && !c.agents.empty()) {
            best = i;
        } else if (!b.agents.empty() && !c.agents.empty() &&
                   *c.agents.begin() < *b.agents.begin()) {
            best = i;
        }
    }
    if (best < 0) throw ElpError("point_for: event not covered: " + orig);
    return detail::t_event_name(orig, best);
}

/// Cross-component edges among transformed events reachable from
/// `from`; this is the (reachable part of the) graph G of the model.
inline std::set<std::pair<int, int>> reachable_component_graph(
    const TransformResult& t, const std::string& from) {
    std::set<std::pair<int, int>> g;
    for (const auto& e : reachable_events(t.model, from))
        for (const auto& a : t.model.uni.agents)
            for (const auto& u : t.model.successors(e, a))
                if (t.comp_of.at(e) != t.comp_of.at(u))
                    g.insert({t.comp_of.at(e), t.comp_of.at(u)});
    return g;
}

/// True when the directed graph has no cycle.
inline bool acyclic_graph(const std::set<std::pair<int, int>>& g) {
    std::map<int, std::vector<int>> adj;
    std::set<int> nodes;
    for (const auto& [u, v] : g) {
        adj[u].push_back(v);
        nodes.insert(u);
        nodes.insert(v);
    }
    std::map<int, int> state;  // 0 unseen, 1 on stack, 2 done
    auto dfs = [&](auto&& self, int u) -> bool {
        state[u] = 1;
        for (int v : adj[u]) {
            if (state[v] == 1) return false;
            if (state[v] == 0 && !self(self, v)) return false;
        }
        state[u] = 2;
        return true;
    };
    for (int u : nodes)
        if (state[u] == 0 && !dfs(dfs, u)) return false;
    return true;
}

// ── Nested loops ────────────────────────────────────────────────────
//
// A simple loop is a cycle listed with a designated start-point; L' is
// connected to L by its start-point when L' starts at a non-start node
// of L and the loops share no other node.  A k-nested loop is a chain
// of k loops, each connected to its predecessor.

namespace detail {

struct Loop {
    std::vector<int> nodes;  // nodes[0] is the start-point
};

inline void enumerate_loops(int n, const std::set<std::pair<int, int>>& edges,
                            std::vector<Loop>& out, std::size_t loop_cap) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : edges)
        adj[static_cast<std::size_t>(u)].push_back(v);
    std::vector<int> path;
    std::vector<bool> on_path(static_cast<std::size_t>(n), false);
    // every rotation is a distinct loop (the start-point matters), so we
    // do not canonicalize
    auto dfs = [&](auto&& self, int start, int u) -> void {
        if (out.size() > loop_cap)
            throw ResourceBound("nested_loop_depth: too many simple loops");
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (v == start) {
                out.push_back(Loop{path});
            } else if (!on_path[static_cast<std::size_t>(v)]) {
                path.push_back(v);
                on_path[static_cast<std::size_t>(v)] = true;
                self(self, start, v);
                on_path[static_cast<std::size_t>(v)] = false;
                path.pop_back();
            }
        }
    };
    for (int s = 0; s < n; ++s) {
        path = {s};
        std::fill(on_path.begin(), on_path.end(), false);
        on_path[static_cast<std::size_t>(s)] = true;
        dfs(dfs, s, s);
    }
}

inline bool connected_by_start(const Loop& l, const Loop& lp) {
    // lp's start must be a non-start node of l; no other node shared
    int t = -1;
    for (std::size_t i = 1; i < l.nodes.size(); ++i)
        if (l.nodes[i] == lp.nodes[0]) t = static_cast<int>(i);
    if (t < 0) return false;
    for (std::size_t i = 0; i < l.nodes.size(); ++i) {
        if (static_cast<int>(i) == t) continue;
        for (std::size_t j = 1; j < lp.nodes.size(); ++j)
            if (l.nodes[i] == lp.nodes[j]) return false;
    }
    return true;
}

}  // namespace detail

/// Length of the longest chain of start-point-connected simple loops in
/// the graph (0 when acyclic).  Chains longer than `cap` raise
/// CapExceeded.
inline int nested_loop_depth(int n_nodes,
                             const std::set<std::pair<int, int>>& edges,
                             int cap = 6) {
    std::vector<detail::Loop> loops;
    detail::enumerate_loops(n_nodes, edges, loops, 200000);
    if (loops.empty()) return 0;
    int best = 1;
    auto extend = [&](auto&& self, const detail::Loop& last, int depth) -> void {
        if (depth > cap)
            throw CapExceeded("nested_loop_depth: deeper than cap " +
                              std::to_string(cap));
        best = std::max(best, depth);
        for (const auto& lp : loops)
            if (detail::connected_by_start(last, lp)) self(self, lp, depth + 1);
    };
    for (const auto& l : loops) extend(extend, l, 1);
    return best;
}

}  // namespace elp

#endif  // ELP_TRANSFORM_HPP
