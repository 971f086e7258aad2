#ifndef ELP_HIERARCHY_HPP
#define ELP_HIERARCHY_HPP

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

// ── kRLP hierarchy ──────────────────────────────────────────────────
//
// A program sits in kRLP when it uses at most k pairwise-dependent μ
// operators; a model's position is read off the nested-loop depth of
// the reachable component graph of T(N).  The hierarchy is strict on
// models whose reachable events carry pairwise non-equivalent
// preconditions, so the classification also reports that flag.

/// k such that the program is in kRLP (its dependent-μ count).
inline int classify_program(const TermPtr& t) { return dependent_mu_count(t); }

struct ModelClass {
    int depth = 0;                     // nested-loop depth of G(T(N))
    bool premise_distinct_pre = false; // strictness premise holds
};

inline ModelClass classify_model(const PointedAction& ns, const Oracle& oracle,
                                 int loop_cap = 6) {
    ModelClass out;
    TransformResult t = t_transform(ns.model);
    std::string w0 = point_for(t, ns.actual);

    // component graph restricted to components with a reachable event
    auto g0 = reachable_component_graph(t, w0);
    std::set<int> live{t.comp_of.at(w0)};
    for (const auto& [u, v] : g0) {
        live.insert(u);
        live.insert(v);
    }
    std::map<int, int> reindex;
    for (int c : live) reindex.emplace(c, static_cast<int>(reindex.size()));
    std::set<std::pair<int, int>> g;
    for (const auto& [u, v] : g0) g.insert({reindex.at(u), reindex.at(v)});
    out.depth =
        nested_loop_depth(static_cast<int>(reindex.size()), g, loop_cap);

    // are the reachable events' preconditions pairwise non-equivalent?
    std::vector<FormulaPtr> pres;
    std::set<std::string> seen;
    for (const auto& e : reachable_events(ns.model, ns.actual)) {
        const auto& p = ns.model.pre_of(e);
        if (seen.insert(print_formula(p)).second) pres.push_back(p);
    }
    out.premise_distinct_pre = true;
    for (std::size_t i = 0; i < pres.size() && out.premise_distinct_pre; ++i)
        for (std::size_t j = i + 1; j < pres.size(); ++j)
            if (oracle.equivalent(pres[i], pres[j])) {
                out.premise_distinct_pre = false;
                break;
            }
    return out;
}

// ── Strictness witnesses ────────────────────────────────────────────

/// A program whose action model is in kRLP but (given enough pairwise
/// non-equivalent preconditions) not in (k−1)RLP.  k ≥ 3 follows a
/// cyclic-chain recipe over k+1 agents; the universe must supply them.
inline TermPtr witness(int k, const Universe& uni) {
    if (k < 0) throw ElpError("witness: k must be >= 0");
    auto agent = [&](int i) -> std::string {
        if (i >= static_cast<int>(uni.agents.size()))
            throw UniverseTooSmall("witness: need " + std::to_string(k + 1) +
                                   " agents");
        return uni.agents[static_cast<std::size_t>(i)];
    };
    if (k == 0) {
        auto phi = distinguishing_formulas(1, uni);
        return t_learn({agent(0)}, {t_test(phi[0])});
    }
    if (k == 1) {
        // μX.L_b(φ|_a L_a(ψ|_b L_b(X)))
        auto f = distinguishing_formulas(2, uni);
        std::string a = agent(0), b = agent(1);
        return t_mu(
            "X", t_learn({b}, {t_wrong(
                              f[0], {a},
                              t_learn({a}, {t_wrong(f[1], {b},
                                                    t_learn({b},
                                                            {t_var("X")}))}))}));
    }
    if (k == 2) {
        // μX.L_a(φ|_b μY.L_b(ψ|_a X ∩ ψ|_c L_c(θ|_b Y)))
        auto f = distinguishing_formulas(3, uni);
        std::string a = agent(0), b = agent(1), c = agent(2);
        TermPtr inner = t_concur(
            t_wrong(f[1], {a}, t_var("X")),
            t_wrong(f[1], {c},
                    t_learn({c}, {t_wrong(f[2], {b}, t_var("Y"))})));
        return t_mu("X",
                    t_learn({a}, {t_wrong(f[0], {b},
                                          t_mu("Y", t_learn({b}, {inner})))}));
    }
    // k ≥ 3: A_j = μX_j.L_{a_j}(φ_j|_{a_{j−1}} X_{j−1} ∩ φ_j|_{a_{j+1}} …)
    auto f = distinguishing_formulas(k + 1, uni);
    auto var = [](int j) { return "X" + std::to_string(j); };
    auto phi = [&](int j) { return f[static_cast<std::size_t>(j - 1)]; };
    // innermost first: A_k, then A_{k−1}, …, A_1
    TermPtr tail = t_learn(
        {agent(k)}, {t_wrong(phi(k + 1), {agent(k - 1)}, t_var(var(k)))});
    TermPtr acc = t_mu(
        var(k),
        t_learn({agent(k - 1)},
                {t_concur(t_wrong(phi(k), {agent(k - 2)}, t_var(var(k - 1))),
                          t_wrong(phi(k), {agent(k)}, tail))}));
    for (int j = k - 1; j >= 2; --j)
        acc = t_mu(var(j),
                   t_learn({agent(j - 1)},
                           {t_concur(
                               t_wrong(phi(j), {agent(j - 2)}, t_var(var(j - 1))),
                               t_wrong(phi(j), {agent(j)}, acc))}));
    return t_mu(var(1),
                t_learn({agent(0)}, {t_wrong(phi(1), {agent(1)}, acc)}));
}

}  // namespace elp

#endif  // ELP_HIERARCHY_HPP
