#ifndef ELP_KD45_HPP
#define ELP_KD45_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elp/formula.hpp"
#include "elp/kripke.hpp"
#include "elp/universe.hpp"

namespace elp {

// ── KD45 satisfiability by type elimination ─────────────────────────
//
// KD45 models are unions of clusters: the i-successor set of any state
// is a nonempty set C with succ_i(t) = C for every t ∈ C, so the truth
// values of K_i-subformulas are uniform across a cluster and agree with
// the pointing state.  We exploit this shape directly: enumerate all
// boolean-saturated labelings of the subformula closure, then
// iteratively eliminate labelings that cannot be given a valid cluster
// of surviving labelings for some agent.  A surviving labeling
// satisfying φ doubles as a world of a concrete finite KD45 witness
// model, which the `kripke` checker can confirm independently.

struct ProverConfig {
    /// Max number of base items (atoms + distinct K-subformulas); the
    /// labeling space is 2^base.
    int max_base = 18;
};

namespace detail {

struct Closure {
    const Universe* uni = nullptr;
    std::vector<std::string> atoms;       // atoms occurring in the formula set
    std::vector<FormulaPtr> knows;        // distinct K-subformulas
    std::vector<std::string> know_keys;   // printed forms, for lookup

    int base_size() const {
        return static_cast<int>(atoms.size() + knows.size());
    }
    int atom_index(const std::string& p) const {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] == p) return static_cast<int>(i);
        return -1;
    }
    int know_index(const FormulaPtr& f) const {
        std::string key = print_formula(f);
        for (std::size_t i = 0; i < know_keys.size(); ++i)
            if (know_keys[i] == key) return static_cast<int>(atoms.size() + i);
        return -1;
    }
    void collect(const FormulaPtr& f) {
        switch (f->kind) {
            case Formula::Kind::Atom:
                if (atom_index(f->name) < 0) atoms.push_back(f->name);
                break;
            case Formula::Kind::Not:
                collect(f->lhs);
                break;
            case Formula::Kind::And:
                collect(f->lhs);
                collect(f->rhs);
                break;
            case Formula::Kind::Know:
                collect(f->lhs);
                if (know_index(f) < 0) {
                    know_keys.push_back(print_formula(f));
                    knows.push_back(f);
                }
                break;
        }
    }
};

using Label = std::uint32_t;

inline bool eval_label(const Closure& cl, const FormulaPtr& f, Label w) {
    switch (f->kind) {
        case Formula::Kind::Atom:
            return (w >> cl.atom_index(f->name)) & 1u;
        case Formula::Kind::Not:
            return !eval_label(cl, f->lhs, w);
        case Formula::Kind::And:
            return eval_label(cl, f->lhs, w) && eval_label(cl, f->rhs, w);
        case Formula::Kind::Know:
            return (w >> cl.know_index(f)) & 1u;
    }
    return false;
}

struct Elimination {
    Closure cl;
    std::vector<Label> survivors;
    // per agent: indices into cl.knows owned by that agent
    std::map<std::string, std::vector<int>> agent_knows;

    // Cluster check for labeling w and agent a among current survivors:
    // candidates share w's a-profile and satisfy every believed body;
    // the cluster is valid when it is nonempty and refutes every
    // disbelieved body.
    bool cluster_ok(Label w, const std::string& a) const {
        const auto& ks = agent_knows.at(a);
        std::vector<int> believed, disbelieved;
        for (int k : ks) {
            int bit = static_cast<int>(cl.atoms.size()) + k;
            if ((w >> bit) & 1u)
                believed.push_back(k);
            else
                disbelieved.push_back(k);
        }
        std::vector<bool> refuted(disbelieved.size(), false);
        bool nonempty = false;
        for (Label v : survivors) {
            bool cand = true;
            for (int k : ks) {
                int bit = static_cast<int>(cl.atoms.size()) + k;
                if (((v >> bit) & 1u) != ((w >> bit) & 1u)) {
                    cand = false;
                    break;
                }
            }
            if (!cand) continue;
            for (int k : believed)
                if (!eval_label(cl, cl.knows[static_cast<std::size_t>(k)]->lhs, v)) {
                    cand = false;
                    break;
                }
            if (!cand) continue;
            nonempty = true;
            for (std::size_t d = 0; d < disbelieved.size(); ++d)
                if (!refuted[d] &&
                    !eval_label(cl, cl.knows[static_cast<std::size_t>(disbelieved[d])]->lhs, v))
                    refuted[d] = true;
        }
        if (!nonempty) return false;
        for (bool r : refuted)
            if (!r) return false;
        return true;
    }

    /// Members of the maximal valid cluster for (w, a); only meaningful
    /// after elimination has stabilized.
    std::vector<Label> cluster_members(Label w, const std::string& a) const {
        const auto& ks = agent_knows.at(a);
        std::vector<Label> out;
        for (Label v : survivors) {
            bool cand = true;
            for (int k : ks) {
                int bit = static_cast<int>(cl.atoms.size()) + k;
                if (((v >> bit) & 1u) != ((w >> bit) & 1u)) {
                    cand = false;
                    break;
                }
                if ((w >> bit) & 1u &&
                    !eval_label(cl, cl.knows[static_cast<std::size_t>(k)]->lhs, v)) {
                    cand = false;
                    break;
                }
            }
            if (cand) out.push_back(v);
        }
        return out;
    }

    void run() {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<Label> next;
            next.reserve(survivors.size());
            for (Label w : survivors) {
                bool ok = true;
                for (const auto& a : cl.uni->agents)
                    if (!cluster_ok(w, a)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    next.push_back(w);
                else
                    changed = true;
            }
            survivors = std::move(next);
        }
    }
};

inline Elimination eliminate(const FormulaPtr& f, const Universe& uni,
                             const ProverConfig& cfg) {
    Elimination e;
    e.cl.uni = &uni;
    e.cl.collect(f);
    int n = e.cl.base_size();
    if (n > cfg.max_base)
        throw ResourceBound("KD45 prover: closure has " + std::to_string(n) +
                            " base items, cap is " +
                            std::to_string(cfg.max_base));
    for (const auto& a : uni.agents) e.agent_knows[a] = {};
    for (std::size_t k = 0; k < e.cl.knows.size(); ++k)
        e.agent_knows[e.cl.knows[k]->name].push_back(static_cast<int>(k));
    for (Label w = 0; w < (Label{1} << n); ++w) e.survivors.push_back(w);
    e.run();
    return e;
}

}  // namespace detail

/// True iff φ holds at some state of some serial-transitive-Euclidean
/// Kripke model.
inline bool kd45_satisfiable(const FormulaPtr& f, const Universe& uni,
                             const ProverConfig& cfg = {}) {
    auto e = detail::eliminate(f, uni, cfg);
    for (auto w : e.survivors)
        if (detail::eval_label(e.cl, f, w)) return true;
    return false;
}

inline bool kd45_valid(const FormulaPtr& f, const Universe& uni,
                       const ProverConfig& cfg = {}) {
    return !kd45_satisfiable(f_not(f), uni, cfg);
}

inline bool kd45_equivalent(const FormulaPtr& f, const FormulaPtr& g,
                            const Universe& uni, const ProverConfig& cfg = {}) {
    return kd45_valid(iff(f, g), uni, cfg);
}

/// A finite KD45 model and state where φ holds, or nullopt when φ is
/// unsatisfiable.  Worlds are the surviving labelings reachable from
/// the chosen one; `satisfies` can confirm the result independently.
inline std::optional<KripkeState> kd45_witness(const FormulaPtr& f,
                                               const Universe& uni,
                                               const ProverConfig& cfg = {}) {
    auto e = detail::eliminate(f, uni, cfg);
    std::optional<detail::Label> start;
    for (auto w : e.survivors)
        if (detail::eval_label(e.cl, f, w)) {
            start = w;
            break;
        }
    if (!start) return std::nullopt;

    // reachable worlds
    std::set<detail::Label> worlds{*start};
    std::vector<detail::Label> queue{*start};
    std::map<std::pair<detail::Label, std::string>, std::vector<detail::Label>>
        clusters;
    while (!queue.empty()) {
        auto w = queue.back();
        queue.pop_back();
        for (const auto& a : uni.agents) {
            auto mem = e.cluster_members(w, a);
            clusters[{w, a}] = mem;
            for (auto v : mem)
                if (worlds.insert(v).second) queue.push_back(v);
        }
    }

    KripkeModel m;
    m.uni = uni;
    auto name_of = [](detail::Label w) { return "w" + std::to_string(w); };
    for (auto w : worlds) m.states.push_back(name_of(w));
    for (const auto& a : uni.agents) m.rel[a] = {};
    for (auto w : worlds) {
        for (const auto& a : uni.agents) {
            auto it = clusters.find({w, a});
            const auto mem =
                it != clusters.end() ? it->second : e.cluster_members(w, a);
            for (auto v : mem) m.rel[a].insert({name_of(w), name_of(v)});
        }
    }
    for (const auto& p : uni.atoms) {
        int i = e.cl.atom_index(p);
        if (i < 0) continue;
        for (auto w : worlds)
            if ((w >> i) & 1u) m.val[p].insert(name_of(w));
    }
    return KripkeState{std::move(m), name_of(*start)};
}

// ── Equivalence oracle ──────────────────────────────────────────────

/// Pluggable formula-equivalence test: `Syntactic` is structural
/// equality of the normalized trees, `Kd45` the real prover (with a
/// syntactic fast path).  Results are memoized by printed form.
class Oracle {
public:
    enum class Mode { Syntactic, Kd45 };

    Oracle() = default;
    Oracle(Mode m, Universe u) : mode_(m), uni_(std::move(u)) {}

    Mode mode() const { return mode_; }
    const Universe& universe() const { return uni_; }

    bool equivalent(const FormulaPtr& f, const FormulaPtr& g) const {
        if (equal(f, g)) return true;
        if (mode_ == Mode::Syntactic) return false;
        std::string kf = print_formula(f), kg = print_formula(g);
        if (kg < kf) std::swap(kf, kg);
        auto it = cache_.find({kf, kg});
        if (it != cache_.end()) return it->second;
        bool r = kd45_equivalent(f, g, uni_, cfg_);
        cache_.emplace(std::make_pair(kf, kg), r);
        return r;
    }

private:
    Mode mode_ = Mode::Kd45;
    Universe uni_;
    ProverConfig cfg_;
    mutable std::map<std::pair<std::string, std::string>, bool> cache_;
};

// ── Distinguishing formulas ─────────────────────────────────────────

/// n formulas over the universe that are pairwise not KD45-equivalent,
/// found by size-ordered enumeration filtered through the prover.
inline std::vector<FormulaPtr> distinguishing_formulas(
    int n, const Universe& uni, const ProverConfig& cfg = {},
    int candidate_cap = 4000) {
    if (n < 1) throw ElpError("distinguishing_formulas: n must be >= 1");
    if (uni.atoms.empty())
        throw ResourceBound("distinguishing_formulas: universe has no atoms");

    std::vector<FormulaPtr> chosen;
    // candidate layers by construction depth
    std::vector<FormulaPtr> layer;
    for (const auto& p : uni.atoms) layer.push_back(atom(p));
    int examined = 0;
    std::vector<FormulaPtr> pool = layer;
    std::size_t next = 0;
    while (static_cast<int>(chosen.size()) < n) {
        if (next >= pool.size()) {
            // grow the pool: negations, K-wrappings, pairwise conjunctions
            std::vector<FormulaPtr> grown;
            for (const auto& f : layer) {
                grown.push_back(f_not(f));
                for (const auto& a : uni.agents) grown.push_back(know(a, f));
            }
            for (const auto& f : layer)
                for (const auto& g : layer)
                    grown.push_back(f_and(f, g));
            layer = grown;
            pool.insert(pool.end(), grown.begin(), grown.end());
        }
        const FormulaPtr& cand = pool[next++];
        if (++examined > candidate_cap)
            throw ResourceBound("distinguishing_formulas: candidate cap hit");
        bool fresh = true;
        for (const auto& c : chosen)
            if (kd45_equivalent(c, cand, uni, cfg)) {
                fresh = false;
                break;
            }
        if (fresh) chosen.push_back(cand);
    }
    return chosen;
}

}  // namespace elp

#endif  // ELP_KD45_HPP
