#ifndef ELP_KRIPKE_HPP
#define ELP_KRIPKE_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elp/formula.hpp"
#include "elp/universe.hpp"

namespace elp {

using EdgeSet = std::set<std::pair<std::string, std::string>>;

// ── Models ──────────────────────────────────────────────────────────

/// Finite Kripke model ⟨S, (⇀_i), V⟩.  `rel` is defined (possibly
/// empty) for every agent of the universe.
struct KripkeModel {
    Universe uni;
    std::vector<std::string> states;
    std::map<std::string, EdgeSet> rel;          // agent -> pairs
    std::map<std::string, std::set<std::string>> val;  // atom -> states

    bool has_state(const std::string& s) const {
        for (const auto& t : states)
            if (t == s) return true;
        return false;
    }
    const EdgeSet& edges(const std::string& agent) const {
        static const EdgeSet empty;
        auto it = rel.find(agent);
        return it == rel.end() ? empty : it->second;
    }
    std::set<std::string> successors(const std::string& s,
                                     const std::string& agent) const {
        std::set<std::string> out;
        for (const auto& [u, v] : edges(agent))
            if (u == s) out.insert(v);
        return out;
    }
    void validate_refs() const {
        for (const auto& [a, es] : rel) {
            uni.require_agent(a);
            for (const auto& [u, v] : es)
                if (!has_state(u) || !has_state(v))
                    throw ElpError("relation references undeclared state");
        }
        for (const auto& [p, ss] : val) {
            uni.require_atom(p);
            for (const auto& s : ss)
                if (!has_state(s))
                    throw ElpError("valuation references undeclared state");
        }
    }
};

/// Pointed model (M, s).
struct KripkeState {
    KripkeModel model;
    std::string actual;
};

// ── Frame classification ────────────────────────────────────────────

struct AgentFrameFlags {
    bool reflexive = false;
    bool serial = false;
    bool transitive = false;
    bool euclidean = false;
    bool is_S5() const { return reflexive && transitive && euclidean; }
    bool is_KD45() const { return serial && transitive && euclidean; }
    bool is_K45() const { return transitive && euclidean; }
};

struct FrameReport {
    std::map<std::string, AgentFrameFlags> per_agent;
    bool is_S5 = true;
    bool is_KD45 = true;
    bool is_K45 = true;
};

/// Direct quantifier checking over a finite relation.
inline AgentFrameFlags classify_relation(const std::vector<std::string>& states,
                                         const EdgeSet& es) {
    AgentFrameFlags f;
    f.reflexive = true;
    f.serial = true;
    f.transitive = true;
    f.euclidean = true;
    auto has = [&](const std::string& u, const std::string& v) {
        return es.count({u, v}) > 0;
    };
    for (const auto& s : states) {
        if (!has(s, s)) f.reflexive = false;
        bool any = false;
        for (const auto& t : states)
            if (has(s, t)) any = true;
        if (!any) f.serial = false;
    }
    for (const auto& [s, t] : es) {
        for (const auto& u : states) {
            if (has(t, u) && !has(s, u)) f.transitive = false;
            if (has(s, u) && !has(t, u)) f.euclidean = false;
        }
    }
    return f;
}

inline FrameReport frame_report(const std::vector<std::string>& states,
                                const std::map<std::string, EdgeSet>& rel,
                                const std::vector<std::string>& agents) {
    FrameReport r;
    for (const auto& a : agents) {
        auto it = rel.find(a);
        static const EdgeSet empty;
        AgentFrameFlags f =
            classify_relation(states, it == rel.end() ? empty : it->second);
        r.is_S5 = r.is_S5 && f.is_S5();
        r.is_KD45 = r.is_KD45 && f.is_KD45();
        r.is_K45 = r.is_K45 && f.is_K45();
        r.per_agent.emplace(a, f);
    }
    return r;
}

inline FrameReport frame_class(const KripkeModel& m) {
    return frame_report(m.states, m.rel, m.uni.agents);
}

// ── Present group, applicability, satisfaction ──────────────────────

/// gr((M,s)) = {i | ∃t. s ⇀_i t}.
inline AgentSet present_group(const KripkeModel& m, const std::string& s) {
    AgentSet out;
    for (const auto& a : m.uni.agents)
        if (!m.successors(s, a).empty()) out.insert(a);
    return out;
}
inline AgentSet present_group(const KripkeState& ms) {
    return present_group(ms.model, ms.actual);
}

/// Applicable formulas: atoms always; ∧/¬ componentwise; K_iφ iff i is
/// present and φ is applicable at every i-successor.
inline bool is_applicable(const KripkeModel& m, const std::string& s,
                          const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Atom:
            return true;
        case Formula::Kind::Not:
            return is_applicable(m, s, f->lhs);
        case Formula::Kind::And:
            return is_applicable(m, s, f->lhs) && is_applicable(m, s, f->rhs);
        case Formula::Kind::Know: {
            auto succ = m.successors(s, f->name);
            if (succ.empty()) return false;
            for (const auto& t : succ)
                if (!is_applicable(m, t, f->lhs)) return false;
            return true;
        }
    }
    return false;
}
inline bool is_applicable(const KripkeState& ms, const FormulaPtr& f) {
    return is_applicable(ms.model, ms.actual, f);
}

namespace detail {
inline bool truth(const KripkeModel& m, const std::string& s,
                  const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Atom: {
            auto it = m.val.find(f->name);
            return it != m.val.end() && it->second.count(s) > 0;
        }
        case Formula::Kind::Not:
            return !truth(m, s, f->lhs);
        case Formula::Kind::And:
            return truth(m, s, f->lhs) && truth(m, s, f->rhs);
        case Formula::Kind::Know:
            for (const auto& t : m.successors(s, f->name))
                if (!truth(m, t, f->lhs)) return false;
            return true;
    }
    return false;
}
}  // namespace detail

/// Truth is only defined for applicable formulas; anything else is a
/// NotApplicable error, deliberately distinct from false.
inline bool satisfies(const KripkeModel& m, const std::string& s,
                      const FormulaPtr& f) {
    if (!is_applicable(m, s, f))
        throw NotApplicable("formula not applicable at state " + s + ": " +
                            print_formula(f));
    return detail::truth(m, s, f);
}
inline bool satisfies(const KripkeState& ms, const FormulaPtr& f) {
    return satisfies(ms.model, ms.actual, f);
}

// ── Bisimulation on epistemic states ────────────────────────────────
//
// Standard valuation-preserving bisimulation via partition refinement
// on the disjoint union, seeded by atom agreement.

namespace detail {

// Generic refinement: states are 0..n-1, `succ(a, i)` gives successor
// indices, initial partition given as block ids.  Returns stable block
// ids (coarsest bisimulation respecting the seed).
template <typename SuccFn>
std::vector<int> refine_partition(int n, const std::vector<std::string>& agents,
                                  std::vector<int> block, SuccFn succ) {
    bool changed = true;
    while (changed) {
        changed = false;
        // signature of a state: (block, for each agent the set of
        // successor blocks)
        std::map<std::vector<int>, int> sig_to_block;
        std::vector<int> next(n);
        for (int i = 0; i < n; ++i) {
            std::vector<int> sig;
            sig.push_back(block[i]);
            for (const auto& a : agents) {
                std::set<int> sb;
                for (int j : succ(a, i)) sb.insert(block[j]);
                sig.push_back(-1);  // separator
                for (int b : sb) sig.push_back(b);
            }
            auto [it, fresh] =
                sig_to_block.emplace(sig, static_cast<int>(sig_to_block.size()));
            next[i] = it->second;
        }
        if (next != block) {
            changed = true;
            block = std::move(next);
        }
    }
    return block;
}

}  // namespace detail

/// True iff a relation with Initial/Forth/Back exists whose related
/// states agree on all atoms.
inline bool kripke_bisimilar(const KripkeState& m1, const KripkeState& m2) {
    if (!(m1.model.uni == m2.model.uni))
        throw ElpError("kripke_bisimilar: universe mismatch");
    const auto& A = m1.model.uni;
    int n1 = static_cast<int>(m1.model.states.size());
    int n2 = static_cast<int>(m2.model.states.size());
    int n = n1 + n2;
    std::map<std::string, int> idx1, idx2;
    for (int i = 0; i < n1; ++i) idx1[m1.model.states[i]] = i;
    for (int i = 0; i < n2; ++i) idx2[m2.model.states[i]] = n1 + i;

    // seed: agreement on every atom
    std::map<std::vector<bool>, int> seed;
    std::vector<int> block(n);
    auto atom_sig = [&](const KripkeModel& m, const std::string& s) {
        std::vector<bool> sig;
        for (const auto& p : A.atoms) {
            auto it = m.val.find(p);
            sig.push_back(it != m.val.end() && it->second.count(s) > 0);
        }
        return sig;
    };
    for (int i = 0; i < n1; ++i) {
        auto [it, _] = seed.emplace(atom_sig(m1.model, m1.model.states[i]),
                                    static_cast<int>(seed.size()));
        block[i] = it->second;
    }
    for (int i = 0; i < n2; ++i) {
        auto [it, _] = seed.emplace(atom_sig(m2.model, m2.model.states[i]),
                                    static_cast<int>(seed.size()));
        block[n1 + i] = it->second;
    }

    auto succ = [&](const std::string& a, int i) {
        std::vector<int> out;
        if (i < n1) {
            for (const auto& t : m1.model.successors(m1.model.states[i], a))
                out.push_back(idx1[t]);
        } else {
            for (const auto& t :
                 m2.model.successors(m2.model.states[i - n1], a))
                out.push_back(idx2[t]);
        }
        return out;
    };
    block = detail::refine_partition(n, A.agents, std::move(block), succ);
    return block[idx1[m1.actual]] == block[idx2[m2.actual]];
}

}  // namespace elp

#endif  // ELP_KRIPKE_HPP
