#ifndef ELP_ACTION_MODEL_HPP
#define ELP_ACTION_MODEL_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elp/formula.hpp"
#include "elp/kd45.hpp"
#include "elp/kripke.hpp"
#include "elp/universe.hpp"

namespace elp {

// ── Action models ───────────────────────────────────────────────────

/// Finite action model ⟨S, (⇀_a), pre⟩; pre is total on events.
struct ActionModel {
    Universe uni;
    std::vector<std::string> events;
    std::map<std::string, EdgeSet> rel;        // agent -> pairs
    std::map<std::string, FormulaPtr> pre;     // event -> precondition

    bool has_event(const std::string& e) const {
        for (const auto& t : events)
            if (t == e) return true;
        return false;
    }
    const EdgeSet& edges(const std::string& agent) const {
        static const EdgeSet empty;
        auto it = rel.find(agent);
        return it == rel.end() ? empty : it->second;
    }
    std::set<std::string> successors(const std::string& e,
                                     const std::string& agent) const {
        std::set<std::string> out;
        for (const auto& [u, v] : edges(agent))
            if (u == e) out.insert(v);
        return out;
    }
    const FormulaPtr& pre_of(const std::string& e) const {
        auto it = pre.find(e);
        if (it == pre.end())
            throw ElpError("event has no precondition: " + e);
        return it->second;
    }
    void validate_refs() const {
        for (const auto& [a, es] : rel) {
            uni.require_agent(a);
            for (const auto& [u, v] : es)
                if (!has_event(u) || !has_event(v))
                    throw ElpError("relation references undeclared event");
        }
        for (const auto& e : events) pre_of(e);
    }
};

/// Pointed action model (N, s).
struct PointedAction {
    ActionModel model;
    std::string actual;
};

inline FrameReport frame_class(const ActionModel& n) {
    return frame_report(n.events, n.rel, n.uni.agents);
}

/// gr((N,s)) = {a | ∃t. s ⇀_a t}.
inline AgentSet present_group(const ActionModel& n, const std::string& e) {
    AgentSet out;
    for (const auto& a : n.uni.agents)
        if (!n.successors(e, a).empty()) out.insert(a);
    return out;
}
inline AgentSet present_group(const PointedAction& ns) {
    return present_group(ns.model, ns.actual);
}

/// Events reachable from the point (point included).
inline std::set<std::string> reachable_events(const ActionModel& n,
                                              const std::string& from) {
    std::set<std::string> seen{from};
    std::vector<std::string> queue{from};
    while (!queue.empty()) {
        auto e = queue.back();
        queue.pop_back();
        for (const auto& a : n.uni.agents)
            for (const auto& t : n.successors(e, a))
                if (seen.insert(t).second) queue.push_back(t);
    }
    return seen;
}

/// The submodel induced by the events reachable from the point.
inline PointedAction restrict_reachable(const PointedAction& ns) {
    auto keep = reachable_events(ns.model, ns.actual);
    PointedAction out;
    out.model.uni = ns.model.uni;
    out.actual = ns.actual;
    for (const auto& e : ns.model.events)
        if (keep.count(e)) {
            out.model.events.push_back(e);
            out.model.pre[e] = ns.model.pre_of(e);
        }
    for (const auto& a : ns.model.uni.agents) {
        out.model.rel[a] = {};
        for (const auto& [u, v] : ns.model.edges(a))
            if (keep.count(u) && keep.count(v))
                out.model.rel[a].insert({u, v});
    }
    return out;
}

// ── Product update ──────────────────────────────────────────────────

/// M ∗ N: surviving states are pairs (s₁,t₁) where pre(t₁) is
/// applicable and true at s₁; edges and valuation are componentwise /
/// inherited.  A non-applicable precondition counts as non-survival.
/// Throws ActualEliminated when the pointed pair does not survive.
inline KripkeState product_update(const KripkeState& ms,
                                  const PointedAction& ns) {
    if (!(ms.model.uni == ns.model.uni))
        throw ElpError("product_update: universe mismatch");
    const auto& M = ms.model;
    const auto& N = ns.model;

    auto pair_name = [](const std::string& s, const std::string& e) {
        return "(" + s + "," + e + ")";
    };
    std::set<std::pair<std::string, std::string>> surv;
    for (const auto& s : M.states)
        for (const auto& e : N.events) {
            const auto& pre = N.pre_of(e);
            if (is_applicable(M, s, pre) && detail::truth(M, s, pre))
                surv.insert({s, e});
        }
    if (!surv.count({ms.actual, ns.actual}))
        throw ActualEliminated("actual state eliminated: pre(" + ns.actual +
                               ") fails at " + ms.actual);

    KripkeState out;
    out.model.uni = M.uni;
    out.actual = pair_name(ms.actual, ns.actual);
    for (const auto& [s, e] : surv) out.model.states.push_back(pair_name(s, e));
    for (const auto& a : M.uni.agents) {
        EdgeSet es;
        for (const auto& [s, e] : surv)
            for (const auto& [t, f] : surv)
                if (M.edges(a).count({s, t}) && N.edges(a).count({e, f}))
                    es.insert({pair_name(s, e), pair_name(t, f)});
        out.model.rel[a] = std::move(es);
    }
    for (const auto& [p, ss] : M.val)
        for (const auto& [s, e] : surv)
            if (ss.count(s)) out.model.val[p].insert(pair_name(s, e));
    return out;
}

// ── Bisimulation with the Pre clause ────────────────────────────────

namespace detail {

// Block ids over the disjoint union of two action models, seeded by
// oracle equivalence of preconditions and refined to stability.
inline std::vector<int> action_blocks(const ActionModel& n1,
                                      const ActionModel& n2,
                                      const Oracle& oracle) {
    int c1 = static_cast<int>(n1.events.size());
    int c2 = static_cast<int>(n2.events.size());
    int n = c1 + c2;
    auto pre_at = [&](int i) -> const FormulaPtr& {
        return i < c1 ? n1.pre_of(n1.events[static_cast<std::size_t>(i)])
                      : n2.pre_of(n2.events[static_cast<std::size_t>(i - c1)]);
    };
    // seed: oracle equivalence classes of preconditions
    std::vector<int> block(static_cast<std::size_t>(n));
    std::vector<FormulaPtr> reps;
    for (int i = 0; i < n; ++i) {
        int b = -1;
        for (std::size_t r = 0; r < reps.size(); ++r)
            if (oracle.equivalent(reps[r], pre_at(i))) {
                b = static_cast<int>(r);
                break;
            }
        if (b < 0) {
            b = static_cast<int>(reps.size());
            reps.push_back(pre_at(i));
        }
        block[static_cast<std::size_t>(i)] = b;
    }

    std::map<std::string, int> idx1, idx2;
    for (int i = 0; i < c1; ++i) idx1[n1.events[static_cast<std::size_t>(i)]] = i;
    for (int i = 0; i < c2; ++i)
        idx2[n2.events[static_cast<std::size_t>(i)]] = c1 + i;
    auto succ = [&](const std::string& a, int i) {
        std::vector<int> out;
        if (i < c1) {
            for (const auto& t :
                 n1.successors(n1.events[static_cast<std::size_t>(i)], a))
                out.push_back(idx1[t]);
        } else {
            for (const auto& t :
                 n2.successors(n2.events[static_cast<std::size_t>(i - c1)], a))
                out.push_back(idx2[t]);
        }
        return out;
    };
    return refine_partition(n, n1.uni.agents, std::move(block), succ);
}

inline int event_index(const ActionModel& n, const std::string& e) {
    for (std::size_t i = 0; i < n.events.size(); ++i)
        if (n.events[i] == e) return static_cast<int>(i);
    throw ElpError("unknown event: " + e);
}

}  // namespace detail

/// (N,s) ≃ (N',s'): Initial / Forth / Back plus the Pre clause (related
/// events have KD45-equivalent preconditions, per the oracle).
inline bool bisimilar(const PointedAction& a, const PointedAction& b,
                      const Oracle& oracle) {
    if (!(a.model.uni == b.model.uni))
        throw ElpError("bisimilar: universe mismatch");
    auto block = detail::action_blocks(a.model, b.model, oracle);
    int i = detail::event_index(a.model, a.actual);
    int j = detail::event_index(b.model, b.actual);
    return block[static_cast<std::size_t>(i)] ==
           block[static_cast<std::size_t>(
               static_cast<int>(a.model.events.size()) + j)];
}

/// The maximal bisimulation between the two models, as pairs of event
/// names (used by the CLI to report a witness relation).
inline std::vector<std::pair<std::string, std::string>> bisimulation_witness(
    const PointedAction& a, const PointedAction& b, const Oracle& oracle) {
    auto block = detail::action_blocks(a.model, b.model, oracle);
    int c1 = static_cast<int>(a.model.events.size());
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < a.model.events.size(); ++i)
        for (std::size_t j = 0; j < b.model.events.size(); ++j)
            if (block[i] == block[static_cast<std::size_t>(c1) + j])
                out.push_back({a.model.events[i], b.model.events[j]});
    return out;
}

/// a-bisimilarity: Forth/Back matching the a-successors of the two
/// points up to full bisimilarity (the points themselves need not be
/// related).
inline bool agent_bisimilar(const PointedAction& m1, const PointedAction& m2,
                            const std::string& agent, const Oracle& oracle) {
    if (!(m1.model.uni == m2.model.uni))
        throw ElpError("agent_bisimilar: universe mismatch");
    m1.model.uni.require_agent(agent);
    auto block = detail::action_blocks(m1.model, m2.model, oracle);
    int c1 = static_cast<int>(m1.model.events.size());
    auto block_of1 = [&](const std::string& e) {
        return block[static_cast<std::size_t>(detail::event_index(m1.model, e))];
    };
    auto block_of2 = [&](const std::string& e) {
        return block[static_cast<std::size_t>(
            c1 + detail::event_index(m2.model, e))];
    };
    auto s1 = m1.model.successors(m1.actual, agent);
    auto s2 = m2.model.successors(m2.actual, agent);
    for (const auto& t : s1) {
        bool matched = false;
        for (const auto& u : s2)
            if (block_of1(t) == block_of2(u)) {
                matched = true;
                break;
            }
        if (!matched) return false;
    }
    for (const auto& u : s2) {
        bool matched = false;
        for (const auto& t : s1)
            if (block_of1(t) == block_of2(u)) {
                matched = true;
                break;
            }
        if (!matched) return false;
    }
    return true;
}

}  // namespace elp

#endif  // ELP_ACTION_MODEL_HPP
