#ifndef ELP_COMPILE_HPP
#define ELP_COMPILE_HPP

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elp/action_model.hpp"
#include "elp/kd45.hpp"
#include "elp/term.hpp"
#include "elp/universe.hpp"

namespace elp {

// ── Open action models ──────────────────────────────────────────────
//
// The compiler builds models with three open ingredients per free
// variable X: a hole event standing for s_X (no edges, precondition
// "pre of X"), deferred edges (e,a,X) meaning "e points at every
// a-successor of whatever replaces s_X", and preconditions PreOf(X).
// μX closes all three against the body's actual event.

struct OpenModel {
    Universe uni;
    std::vector<std::string> events;
    std::map<std::string, EdgeSet> rel;            // concrete edges
    std::map<std::string, FormulaPtr> pre;         // concrete preconditions
    std::map<std::string, std::string> pre_var;    // event -> variable
    std::set<std::array<std::string, 3>> deferred; // (event, agent, var)
    std::map<std::string, std::vector<std::string>> holes;  // var -> holes
    std::string actual;

    bool is_closed() const {
        return holes.empty() && deferred.empty() && pre_var.empty();
    }
    bool is_hole(const std::string& e) const {
        for (const auto& [x, hs] : holes)
            for (const auto& h : hs)
                if (h == e) return true;
        return false;
    }
    std::string hole_var(const std::string& e) const {
        for (const auto& [x, hs] : holes)
            for (const auto& h : hs)
                if (h == e) return x;
        throw ElpError("not a hole: " + e);
    }
    std::set<std::string> successors(const std::string& e,
                                     const std::string& agent) const {
        std::set<std::string> out;
        auto it = rel.find(agent);
        if (it != rel.end())
            for (const auto& [u, v] : it->second)
                if (u == e) out.insert(v);
        return out;
    }
    bool has_any_edge(const std::string& e, const std::string& agent) const {
        if (!successors(e, agent).empty()) return true;
        for (const auto& d : deferred)
            if (d[0] == e && d[1] == agent) return true;
        return false;
    }
};

/// A closed open model is an ordinary pointed action model.
inline PointedAction to_pointed(const OpenModel& m) {
    if (!m.is_closed()) throw IllFormed("open model is not closed");
    PointedAction p;
    p.model.uni = m.uni;
    p.model.events = m.events;
    p.model.rel = m.rel;
    p.model.pre = m.pre;
    p.actual = m.actual;
    return p;
}

struct CompileWarning {
    std::string kind;    // e.g. "HoleBisimilarity"
    std::string detail;
};

// ── Compiler ────────────────────────────────────────────────────────

class Compiler {
public:
    explicit Compiler(Oracle oracle) : oracle_(std::move(oracle)) {}

    const std::vector<CompileWarning>& warnings() const { return warnings_; }
    const Oracle& oracle() const { return oracle_; }

    OpenModel compile(const TermPtr& t) {
        switch (t->kind) {
            case Term::Kind::Var:
                return compile_var(t);
            case Term::Kind::Test:
                return compile_test(t);
            case Term::Kind::Learn:
                return compile_learn(t);
            case Term::Kind::Concur:
                return compile_concur(t);
            case Term::Kind::Wrong:
                return compile_wrong(t);
            case Term::Kind::Mu:
                return compile_mu(t);
        }
        throw ElpError("unreachable term kind");
    }

private:
    Oracle oracle_;
    std::vector<CompileWarning> warnings_;
    int counter_ = 0;

    std::string fresh() { return "e" + std::to_string(counter_++); }

    static void merge_into(OpenModel& into, OpenModel&& from) {
        into.events.insert(into.events.end(), from.events.begin(),
                           from.events.end());
        for (auto& [a, es] : from.rel)
            into.rel[a].insert(es.begin(), es.end());
        into.pre.merge(from.pre);
        into.pre_var.merge(from.pre_var);
        into.deferred.insert(from.deferred.begin(), from.deferred.end());
        for (auto& [x, hs] : from.holes) {
            auto& tgt = into.holes[x];
            tgt.insert(tgt.end(), hs.begin(), hs.end());
        }
    }

    // Give `to` a copy of every outgoing `agent`-edge of `from`
    // (concrete and deferred); a hole's edges are entirely deferred.
    static void copy_root_edges(OpenModel& m, const std::string& from,
                                const std::string& to,
                                const std::string& agent) {
        if (m.is_hole(from)) {
            m.deferred.insert({to, agent, m.hole_var(from)});
            return;
        }
        for (const auto& t : m.successors(from, agent))
            m.rel[agent].insert({to, t});
        std::vector<std::array<std::string, 3>> add;
        for (const auto& d : m.deferred)
            if (d[0] == from && d[1] == agent) add.push_back({to, agent, d[2]});
        for (auto& d : add) m.deferred.insert(d);
    }

    static void copy_root_pre(OpenModel& m, const std::string& from,
                              const std::string& to) {
        auto it = m.pre.find(from);
        if (it != m.pre.end()) {
            m.pre[to] = it->second;
            return;
        }
        auto iv = m.pre_var.find(from);
        if (iv != m.pre_var.end()) {
            m.pre_var[to] = iv->second;
            return;
        }
        throw ElpError("root has no precondition: " + from);
    }

    OpenModel compile_var(const TermPtr& t) {
        OpenModel m;
        m.uni = oracle_.universe();
        std::string h = fresh();
        m.events.push_back(h);
        m.pre_var[h] = t->name;
        m.holes[t->name].push_back(h);
        m.actual = h;
        return m;
    }

    OpenModel compile_test(const TermPtr& t) {
        OpenModel m;
        m.uni = oracle_.universe();
        std::string s = fresh();
        m.events.push_back(s);
        m.pre[s] = t->formula;
        m.actual = s;
        return m;
    }

    // Are the roots of the l-th and r-th Learn arguments b-bisimilar?
    // Decidable when both submodels are closed; decided vacuously when
    // neither root has any b-edge, and by structural identity of the
    // argument terms.  Anything else is undecidable at this point: no
    // edge, plus a warning.
    bool roots_b_bisimilar(const std::vector<OpenModel>& sub,
                           const std::vector<TermPtr>& args, std::size_t l,
                           std::size_t r, const std::string& b) {
        const OpenModel& ml = sub[l];
        const OpenModel& mr = sub[r];
        bool l_edge = ml.is_hole(ml.actual) || ml.has_any_edge(ml.actual, b);
        bool r_edge = mr.is_hole(mr.actual) || mr.has_any_edge(mr.actual, b);
        if (!l_edge && !r_edge) return true;
        if (equal(args[l], args[r])) return true;
        if (ml.is_closed() && mr.is_closed())
            return agent_bisimilar(to_pointed(ml), to_pointed(mr), b, oracle_);
        warnings_.push_back(
            {"HoleBisimilarity",
             "cannot decide " + b + "-bisimilarity of open arguments " +
                 print_term(args[l]) + " and " + print_term(args[r])});
        return false;
    }

    OpenModel compile_learn(const TermPtr& t) {
        std::vector<OpenModel> sub;
        for (const auto& a : t->args) sub.push_back(compile(a));
        std::size_t k = sub.size();

        // root b-bisimilarity is decided on the standalone submodels
        std::map<std::tuple<std::size_t, std::size_t, std::string>, bool> bis;
        for (const auto& b : t->group)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    bis[{i, j, b}] = roots_b_bisimilar(sub, t->args, i, j, b);

        std::vector<std::string> arg_actual;
        for (const auto& s : sub) arg_actual.push_back(s.actual);

        OpenModel m;
        m.uni = oracle_.universe();
        std::vector<std::string> roots;
        for (std::size_t l = 0; l < k; ++l) roots.push_back(fresh());
        for (std::size_t l = 0; l < k; ++l) merge_into(m, std::move(sub[l]));
        for (std::size_t l = 0; l < k; ++l) {
            m.events.push_back(roots[l]);
            copy_root_pre(m, arg_actual[l], roots[l]);
        }
        // b-edges among the fresh roots, b ∈ B
        for (const auto& b : t->group)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    if (bis[{i, j, b}])
                        m.rel[b].insert({roots[i], roots[j]});
        // roots inherit the non-B edges of their argument's root
        for (std::size_t l = 0; l < k; ++l)
            for (const auto& a : m.uni.agents)
                if (!t->group.count(a))
                    copy_root_edges(m, arg_actual[l], roots[l], a);
        m.actual = roots[0];
        return m;
    }

    OpenModel compile_concur(const TermPtr& t) {
        OpenModel m1 = compile(t->args[0]);
        OpenModel m2 = compile(t->args[1]);
        std::string a1 = m1.actual, a2 = m2.actual;

        OpenModel m;
        m.uni = oracle_.universe();
        merge_into(m, std::move(m1));
        merge_into(m, std::move(m2));
        std::string root = fresh();
        m.events.push_back(root);
        copy_root_pre(m, a1, root);
        for (const auto& a : m.uni.agents) {
            copy_root_edges(m, a1, root, a);
            copy_root_edges(m, a2, root, a);
        }
        m.actual = root;
        return m;
    }

    OpenModel compile_wrong(const TermPtr& t) {
        OpenModel m = compile(t->args[0]);
        std::string arg_actual = m.actual;
        std::string root = fresh();
        m.events.push_back(root);
        m.pre[root] = t->formula;
        for (const auto& b : t->group)
            copy_root_edges(m, arg_actual, root, b);
        m.actual = root;
        return m;
    }

    // μX.α: identify s_X with the body's actual.  Deferred edges on X
    // resolve to the actual's concrete successors; deferred edges the
    // actual itself carries on other variables propagate.  Iterate to a
    // fixpoint since the actual may gain edges during resolution.
    OpenModel compile_mu(const TermPtr& t) {
        OpenModel m = compile(t->args[0]);
        const std::string& X = t->name;
        auto hit = m.holes.find(X);
        if (hit == m.holes.end()) return m;  // vacuous binder
        if (m.is_hole(m.actual))
            throw IllFormed("mu body's actual is a bare variable");

        std::vector<std::array<std::string, 3>> on_x;
        for (const auto& d : m.deferred)
            if (d[2] == X) on_x.push_back(d);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [e, a, x] : on_x) {
                for (const auto& v : m.successors(m.actual, a))
                    if (m.rel[a].insert({e, v}).second) changed = true;
                // the actual's own unresolved variable edges carry over
                for (const auto& d : m.deferred)
                    if (d[0] == m.actual && d[1] == a && d[2] != X)
                        if (m.deferred.insert({e, a, d[2]}).second)
                            changed = true;
            }
        }
        for (const auto& d : on_x) m.deferred.erase(d);

        // rewrite PreOf(X) to the actual's precondition
        auto pa = m.pre.find(m.actual);
        std::vector<std::string> rewrites;
        for (const auto& [e, x] : m.pre_var)
            if (x == X) rewrites.push_back(e);
        for (const auto& e : rewrites) {
            m.pre_var.erase(e);
            if (pa != m.pre.end()) {
                m.pre[e] = pa->second;
            } else {
                auto iv = m.pre_var.find(m.actual);
                if (iv == m.pre_var.end())
                    throw ElpError("mu actual has no precondition");
                m.pre_var[e] = iv->second;
            }
        }

        // drop the hole events (they never acquired edges)
        std::set<std::string> hs(hit->second.begin(), hit->second.end());
        m.holes.erase(hit);
        std::vector<std::string> kept;
        for (const auto& e : m.events)
            if (!hs.count(e)) kept.push_back(e);
        m.events = std::move(kept);
        for (auto& [a, es] : m.rel)
            for (auto it = es.begin(); it != es.end();)
                it = (hs.count(it->first) || hs.count(it->second)) ? es.erase(it)
                                                                  : ++it;
        return m;
    }
};

// ── Substitution ────────────────────────────────────────────────────

/// Substitute `target` for the variable `x` in `om`: the holes of x are
/// replaced by the target's actual event, deferred edges through x
/// resolve against that event's successor sets, and the target submodel
/// is embedded.  Other holes are untouched.  Target events are renamed
/// when they would collide with existing ones.
inline OpenModel substitute(const OpenModel& om, const std::string& x,
                            OpenModel target) {
    bool free = om.holes.count(x) || om.pre_var.end() !=
                    std::find_if(om.pre_var.begin(), om.pre_var.end(),
                                 [&](const auto& kv) { return kv.second == x; });
    for (const auto& d : om.deferred) free = free || d[2] == x;
    if (!free) throw VariableNotFree("variable not free: " + x);

    OpenModel m = om;

    // embed the target with collision-free event names
    std::set<std::string> taken(m.events.begin(), m.events.end());
    std::map<std::string, std::string> ren;
    for (const auto& e : target.events) {
        std::string n = e;
        while (taken.count(n)) n += "'";
        taken.insert(n);
        ren[e] = n;
        m.events.push_back(n);
    }
    for (const auto& [a, es] : target.rel)
        for (const auto& [u, v] : es) m.rel[a].insert({ren.at(u), ren.at(v)});
    for (const auto& [e, f] : target.pre) m.pre[ren.at(e)] = f;
    for (const auto& [e, y] : target.pre_var) m.pre_var[ren.at(e)] = y;
    for (const auto& d : target.deferred)
        m.deferred.insert({ren.at(d[0]), d[1], d[2]});
    for (const auto& [y, hs] : target.holes)
        for (const auto& h : hs) m.holes[y].push_back(ren.at(h));
    std::string s0 = ren.at(target.actual);

    // retarget concrete edges into x's holes, then resolve deferrals
    std::set<std::string> hs;
    if (auto it = m.holes.find(x); it != m.holes.end())
        hs.insert(it->second.begin(), it->second.end());
    for (auto& [a, es] : m.rel) {
        EdgeSet next;
        for (const auto& [u, v] : es)
            next.insert({u, hs.count(v) ? s0 : v});
        es = std::move(next);
    }
    std::vector<std::array<std::string, 3>> on_x;
    for (const auto& d : m.deferred)
        if (d[2] == x) on_x.push_back(d);
    for (const auto& [e, a, y] : on_x) {
        for (const auto& v : m.successors(s0, a)) m.rel[a].insert({e, v});
        for (const auto& d : m.deferred)
            if (d[0] == s0 && d[1] == a && d[2] != x)
                m.deferred.insert({e, a, d[2]});
        m.deferred.erase({e, a, y});
    }

    // rewrite PreOf(x) to the substituted actual's precondition
    std::vector<std::string> rewrites;
    for (const auto& [e, y] : m.pre_var)
        if (y == x) rewrites.push_back(e);
    for (const auto& e : rewrites) {
        m.pre_var.erase(e);
        if (auto it = m.pre.find(s0); it != m.pre.end())
            m.pre[e] = it->second;
        else
            m.pre_var[e] = m.pre_var.at(s0);
    }

    // drop the now-replaced hole events
    m.holes.erase(x);
    std::vector<std::string> kept;
    for (const auto& e : m.events)
        if (!hs.count(e)) kept.push_back(e);
    m.events = std::move(kept);
    for (auto& [a, es] : m.rel)
        for (auto it = es.begin(); it != es.end();)
            it = (hs.count(it->first) || hs.count(it->second)) ? es.erase(it)
                                                              : ++it;
    if (hs.count(m.actual)) m.actual = s0;
    return m;
}

// ── One-shot convenience ────────────────────────────────────────────

struct CompileResult {
    PointedAction action;
    std::vector<CompileWarning> warnings;
};

/// Compile a closed, well-formed term into its pointed action model.
inline CompileResult compile_program(const TermPtr& t, const Oracle& oracle) {
    if (!free_vars(t).empty())
        throw IllFormed("program has free variables");
    well_formed(t, oracle);
    Compiler c(oracle);
    OpenModel m = c.compile(t);
    return {to_pointed(m), c.warnings()};
}

}  // namespace elp

#endif  // ELP_COMPILE_HPP
