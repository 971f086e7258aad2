#ifndef ELP_RANDOM_GEN_HPP
#define ELP_RANDOM_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include "elp/action_model.hpp"
#include "elp/formula.hpp"
#include "elp/kripke.hpp"
#include "elp/term.hpp"
#include "elp/universe.hpp"

namespace elp {

// ── Seeded random generation ────────────────────────────────────────
//
// K45 relations are exactly "every state points at nothing or at one
// reflexive cluster", so the generator draws clusters first and then
// assigns each state a target cluster (cluster members must target
// their own).  Terms are generated with their side conditions holding
// by construction.

class RandomGen {
public:
    RandomGen(Universe uni, std::uint64_t seed)
        : uni_(std::move(uni)), rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    int pick(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }
    bool coin(double p = 0.5) {
        return std::bernoulli_distribution(p)(rng_);
    }
    const std::string& pick_of(const std::vector<std::string>& v) {
        return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))];
    }

    // ── formulas ────────────────────────────────────────────────────
    FormulaPtr formula(int depth = 2) {
        if (depth <= 0 || coin(0.4)) return atom(pick_of(uni_.atoms));
        switch (pick(0, 2)) {
            case 0:
                return f_not(formula(depth - 1));
            case 1:
                return f_and(formula(depth - 1), formula(depth - 1));
            default:
                return know(pick_of(uni_.agents), formula(depth - 1));
        }
    }

    // ── K45 relations ───────────────────────────────────────────────
    std::map<std::string, EdgeSet> k45_relations(
        const std::vector<std::string>& ids, bool serial = false,
        bool reflexive = false) {
        std::map<std::string, EdgeSet> rel;
        for (const auto& a : uni_.agents) {
            EdgeSet es;
            // random partition of a subset of ids into clusters
            std::vector<std::vector<std::string>> clusters;
            std::map<std::string, int> cluster_of;
            for (const auto& s : ids) {
                if (!reflexive && coin(0.3)) continue;  // s joins no cluster
                int c = clusters.empty() || coin(0.4)
                            ? -1
                            : pick(0, static_cast<int>(clusters.size()) - 1);
                if (c < 0) {
                    c = static_cast<int>(clusters.size());
                    clusters.push_back({});
                }
                clusters[static_cast<std::size_t>(c)].push_back(s);
                cluster_of[s] = c;
            }
            for (const auto& s : ids) {
                int target;
                if (cluster_of.count(s)) {
                    target = cluster_of[s];  // members point at their own
                } else if (!clusters.empty() && (serial || coin(0.6))) {
                    target = pick(0, static_cast<int>(clusters.size()) - 1);
                } else {
                    continue;  // no successors
                }
                for (const auto& t :
                     clusters[static_cast<std::size_t>(target)])
                    es.insert({s, t});
            }
            rel[a] = std::move(es);
        }
        return rel;
    }

    // ── models ──────────────────────────────────────────────────────
    PointedAction k45_action(int n_events, int n_pres = 3) {
        PointedAction p;
        p.model.uni = uni_;
        for (int i = 0; i < n_events; ++i)
            p.model.events.push_back("v" + std::to_string(i));
        p.model.rel = k45_relations(p.model.events);
        std::vector<FormulaPtr> pool;
        for (int i = 0; i < n_pres; ++i) pool.push_back(formula());
        for (const auto& e : p.model.events)
            p.model.pre[e] =
                pool[static_cast<std::size_t>(pick(0, n_pres - 1))];
        p.actual = p.model.events[static_cast<std::size_t>(
            pick(0, n_events - 1))];
        return p;
    }

    PointedAction s5_action(int n_events, int n_pres = 3) {
        PointedAction p = k45_action(n_events, n_pres);
        p.model.rel = k45_relations(p.model.events, /*serial=*/true,
                                    /*reflexive=*/true);
        return p;
    }

    KripkeState k45_kripke(int n_states, bool s5 = false) {
        KripkeState m;
        m.model.uni = uni_;
        for (int i = 0; i < n_states; ++i)
            m.model.states.push_back("w" + std::to_string(i));
        m.model.rel = k45_relations(m.model.states, s5, s5);
        for (const auto& p : uni_.atoms) {
            std::set<std::string> ss;
            for (const auto& s : m.model.states)
                if (coin()) ss.insert(s);
            m.model.val[p] = std::move(ss);
        }
        m.actual = m.model.states[static_cast<std::size_t>(
            pick(0, n_states - 1))];
        return m;
    }

    // ── terms (side conditions hold by construction) ────────────────
    /// μ-free program; group and pre are always defined.
    TermPtr blp(int depth = 3) {
        if (depth <= 0 || coin(0.3))
            return t_learn({pick_of(uni_.agents)}, {t_test(formula(1))});
        switch (pick(0, 2)) {
            case 0: {  // Learn
                int n = pick(1, 3);
                std::vector<TermPtr> args;
                for (int i = 0; i < n; ++i) args.push_back(blp(depth - 1));
                AgentSet B{pick_of(uni_.agents)};
                if (coin(0.3)) B.insert(pick_of(uni_.agents));
                return t_learn(std::move(B), std::move(args));
            }
            case 1: {  // Concur: second side is a Wrong forced to match
                TermPtr a1 = blp(depth - 1);
                TermMeta m1 = term_meta(a1);
                std::vector<std::string> rest;
                for (const auto& a : uni_.agents)
                    if (!m1.group->count(a)) rest.push_back(a);
                if (rest.empty()) return a1;  // no disjoint group available
                AgentSet B2{rest[static_cast<std::size_t>(
                    pick(0, static_cast<int>(rest.size()) - 1))]};
                TermPtr a2 =
                    t_wrong(*m1.pre, B2, t_learn(B2, {t_test(formula(1))}));
                return t_concur(std::move(a1), std::move(a2));
            }
            default: {  // Wrong
                TermPtr a = blp(depth - 1);
                TermMeta m = term_meta(a);
                if (m.group->empty()) a = t_learn({pick_of(uni_.agents)}, {a});
                m = term_meta(a);
                std::vector<std::string> g(m.group->begin(), m.group->end());
                AgentSet B{g[static_cast<std::size_t>(
                    pick(0, static_cast<int>(g.size()) - 1))]};
                return t_wrong(formula(1), std::move(B), std::move(a));
            }
        }
    }

private:
    Universe uni_;
    std::mt19937_64 rng_;
};

}  // namespace elp

#endif  // ELP_RANDOM_GEN_HPP
