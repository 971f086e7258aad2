#ifndef ELP_TERM_HPP
#define ELP_TERM_HPP

#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "elp/formula.hpp"
#include "elp/kd45.hpp"
#include "elp/universe.hpp"

namespace elp {

// ── Learning-program terms ──────────────────────────────────────────
//
//   α := X | ?φ | L_B(α₁,…,α_n) | α ∩ α | ψ|_B α | μX.α
//
// Test announces φ; Learn makes group B learn which of the argument
// actions occurred (the first actually happened); Concur runs two
// group-disjoint learnings at once; Wrong replaces the announced
// precondition by ψ for group B; μ ties a recursion knot.

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { Var, Test, Learn, Concur, Wrong, Mu };

    Kind kind;
    std::string name;             // Var / Mu variable
    FormulaPtr formula;           // Test φ / Wrong ψ
    AgentSet group;               // Learn B / Wrong B
    std::vector<TermPtr> args;    // Learn args / Concur pair / Wrong+Mu body

    Term(Kind k, std::string n, FormulaPtr f, AgentSet g,
         std::vector<TermPtr> a)
        : kind(k),
          name(std::move(n)),
          formula(std::move(f)),
          group(std::move(g)),
          args(std::move(a)) {}
};

inline TermPtr t_var(std::string x) {
    return std::make_shared<Term>(Term::Kind::Var, std::move(x), nullptr,
                                  AgentSet{}, std::vector<TermPtr>{});
}
inline TermPtr t_test(FormulaPtr f) {
    return std::make_shared<Term>(Term::Kind::Test, "", std::move(f),
                                  AgentSet{}, std::vector<TermPtr>{});
}
inline TermPtr t_learn(AgentSet B, std::vector<TermPtr> args) {
    if (B.empty()) throw IllFormed("Learn needs a nonempty agent group");
    if (args.empty()) throw IllFormed("Learn needs at least one argument");
    return std::make_shared<Term>(Term::Kind::Learn, "", nullptr, std::move(B),
                                  std::move(args));
}
inline TermPtr t_concur(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(Term::Kind::Concur, "", nullptr, AgentSet{},
                                  std::vector<TermPtr>{std::move(a), std::move(b)});
}
inline TermPtr t_wrong(FormulaPtr psi, AgentSet B, TermPtr arg) {
    if (B.empty()) throw IllFormed("Wrong needs a nonempty agent group");
    return std::make_shared<Term>(Term::Kind::Wrong, "", std::move(psi),
                                  std::move(B),
                                  std::vector<TermPtr>{std::move(arg)});
}
inline TermPtr t_mu(std::string x, TermPtr body) {
    return std::make_shared<Term>(Term::Kind::Mu, std::move(x), nullptr,
                                  AgentSet{}, std::vector<TermPtr>{std::move(body)});
}

// ── Structural helpers ──────────────────────────────────────────────

inline bool equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name || a->group != b->group)
        return false;
    if ((a->formula == nullptr) != (b->formula == nullptr)) return false;
    if (a->formula && !equal(a->formula, b->formula)) return false;
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    return true;
}

inline void free_vars_rec(const TermPtr& t, std::set<std::string>& bound,
                          std::set<std::string>& out) {
    switch (t->kind) {
        case Term::Kind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            break;
        case Term::Kind::Test:
            break;
        case Term::Kind::Mu: {
            bool fresh = bound.insert(t->name).second;
            free_vars_rec(t->args[0], bound, out);
            if (fresh) bound.erase(t->name);
            break;
        }
        default:
            for (const auto& a : t->args) free_vars_rec(a, bound, out);
    }
}

inline std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> bound, out;
    free_vars_rec(t, bound, out);
    return out;
}

// ── group / pre ─────────────────────────────────────────────────────
//
// Partial maps on open terms: undefined on variables, propagated
// through the first Learn/Concur argument, reset by Wrong (group B,
// pre ψ — unconditionally, so recursion bodies whose Learn argument is
// a bare variable still carry a defined group).

struct TermMeta {
    std::optional<AgentSet> group;
    std::optional<FormulaPtr> pre;
};

inline TermMeta term_meta(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Var:
            return {};
        case Term::Kind::Test:
            return {AgentSet{}, t->formula};
        case Term::Kind::Learn: {
            TermMeta m = term_meta(t->args[0]);
            if (!m.group || !m.pre) return {};
            AgentSet g = t->group;
            g.insert(m.group->begin(), m.group->end());
            return {std::move(g), m.pre};
        }
        case Term::Kind::Concur: {
            TermMeta l = term_meta(t->args[0]);
            TermMeta r = term_meta(t->args[1]);
            if (!l.group || !l.pre || !r.group || !r.pre) return {};
            AgentSet g = *l.group;
            g.insert(r.group->begin(), r.group->end());
            return {std::move(g), l.pre};
        }
        case Term::Kind::Wrong:
            return {t->group, t->formula};
        case Term::Kind::Mu:
            return term_meta(t->args[0]);
    }
    return {};
}

// ── Well-formedness ─────────────────────────────────────────────────

/// Checks the side conditions everywhere in the term:
///   · Concur arguments have disjoint groups and equivalent pres,
///   · Wrong's group is contained in its argument's group when that
///     group is defined,
///   · every μ body has a defined group and pre,
///   · all identifiers belong to the universe (checked at parse time
///     for parsed terms, re-checked here for programmatic ones).
/// Violations throw IllFormed with a path like "/learn.1/concur.r".
inline void well_formed(const TermPtr& t, const Oracle& oracle,
                        const std::string& path = "") {
    const Universe& uni = oracle.universe();
    switch (t->kind) {
        case Term::Kind::Var:
        case Term::Kind::Test:
            break;
        case Term::Kind::Learn: {
            for (const auto& a : t->group) uni.require_agent(a);
            int i = 1;
            for (const auto& a : t->args)
                well_formed(a, oracle,
                            path + "/learn." + std::to_string(i++));
            break;
        }
        case Term::Kind::Concur: {
            TermMeta l = term_meta(t->args[0]);
            TermMeta r = term_meta(t->args[1]);
            if (!l.group || !l.pre || !r.group || !r.pre)
                throw IllFormed("Concur needs both groups and pres defined at " +
                                (path.empty() ? "/" : path));
            for (const auto& a : *l.group)
                if (r.group->count(a))
                    throw IllFormed("Concur groups overlap on agent " + a +
                                    " at " + (path.empty() ? "/" : path));
            if (!oracle.equivalent(*l.pre, *r.pre))
                throw IllFormed("Concur pres differ at " +
                                (path.empty() ? "/" : path));
            well_formed(t->args[0], oracle, path + "/concur.l");
            well_formed(t->args[1], oracle, path + "/concur.r");
            break;
        }
        case Term::Kind::Wrong: {
            for (const auto& a : t->group) uni.require_agent(a);
            TermMeta m = term_meta(t->args[0]);
            if (m.group) {
                for (const auto& a : t->group)
                    if (!m.group->count(a))
                        throw IllFormed("Wrong group not inside argument "
                                        "group at " +
                                        (path.empty() ? "/" : path));
            }
            well_formed(t->args[0], oracle, path + "/wrong");
            break;
        }
        case Term::Kind::Mu: {
            TermMeta m = term_meta(t->args[0]);
            if (!m.group || !m.pre)
                throw IllFormed("mu body has undefined group or pre at " +
                                (path.empty() ? "/" : path));
            well_formed(t->args[0], oracle, path + "/mu");
            break;
        }
    }
}

// ── Dependent μ count ───────────────────────────────────────────────
//
// Two μs are dependent when the inner one's body mentions the outer
// variable free, so the two knots cannot share one variable.  The count
// of a term is the deepest such dependency chain.

namespace detail {

// deepest dependency chain starting at this μ node
inline int mu_chain(const TermPtr& mu) {
    // a binder with no free occurrence could be dropped: no knot here
    if (!free_vars(mu->args[0]).count(mu->name)) return 0;
    int inner_best = 0;
    auto walk = [&](auto&& self, const TermPtr& t) -> void {
        if (t->kind == Term::Kind::Mu) {
            auto fv = free_vars(t->args[0]);
            if (fv.count(mu->name))
                inner_best = std::max(inner_best, mu_chain(t));
            // independent inner μs are visited from the top level
        }
        for (const auto& a : t->args) self(self, a);
    };
    for (const auto& a : mu->args) walk(walk, a);
    return 1 + inner_best;
}

}  // namespace detail

/// Maximum number of pairwise-dependent μ operators; 0 for μ-free terms.
inline int dependent_mu_count(const TermPtr& t) {
    int best = t->kind == Term::Kind::Mu ? detail::mu_chain(t) : 0;
    for (const auto& a : t->args)
        best = std::max(best, dependent_mu_count(a));
    return best;
}

// ── Printing ────────────────────────────────────────────────────────
//
//   ?φ | L{a,b}(α,…) | α ^ α | ψ|{a}α | mu X. α | X
// ^ is left-associative; |{} binds tighter than ^; mu extends right.

namespace detail {

inline void print_term_rec(const TermPtr& t, std::ostream& os, bool in_concur);

inline void print_group(const AgentSet& g, std::ostream& os) {
    os << "{";
    bool first = true;
    for (const auto& a : g) {
        if (!first) os << ",";
        os << a;
        first = false;
    }
    os << "}";
}

inline void print_term_rec(const TermPtr& t, std::ostream& os,
                           bool in_concur) {
    switch (t->kind) {
        case Term::Kind::Var:
            os << t->name;
            break;
        case Term::Kind::Test:
            os << "?" << print_formula(t->formula);
            break;
        case Term::Kind::Learn: {
            os << "L";
            print_group(t->group, os);
            os << "(";
            bool first = true;
            for (const auto& a : t->args) {
                if (!first) os << ", ";
                print_term_rec(a, os, false);
                first = false;
            }
            os << ")";
            break;
        }
        case Term::Kind::Concur:
            if (in_concur) os << "(";
            print_term_rec(t->args[0], os, t->args[0]->kind == Term::Kind::Mu);
            os << " ^ ";
            print_term_rec(t->args[1], os, true);
            if (in_concur) os << ")";
            break;
        case Term::Kind::Wrong: {
            std::string f = print_formula(t->formula);
            // parenthesize compound announced formulas for re-parsability
            if (t->formula->kind == Formula::Kind::Atom)
                os << f;
            else
                os << "(" << f << ")";
            os << "|";
            print_group(t->group, os);
            // the argument binds tighter than ^, so a Concur argument
            // needs parentheses (a μ argument extends right and reads
            // back fine, but parenthesizing keeps the tree stable)
            print_term_rec(t->args[0], os,
                           t->args[0]->kind == Term::Kind::Concur);
            break;
        }
        case Term::Kind::Mu:
            if (in_concur) os << "(";
            os << "mu " << t->name << ". ";
            print_term_rec(t->args[0], os, false);
            if (in_concur) os << ")";
            break;
    }
}

}  // namespace detail

inline std::string print_term(const TermPtr& t) {
    std::ostringstream os;
    detail::print_term_rec(t, os, false);
    return os.str();
}

// ── Parsing ─────────────────────────────────────────────────────────

namespace detail {

class TermParser {
public:
    TermParser(FormulaLexer& lx, const Universe& uni) : lx_(lx), uni_(uni) {}

    TermPtr parse() { return parse_concur(); }

private:
    FormulaLexer& lx_;
    const Universe& uni_;

    AgentSet parse_group() {
        AgentSet g;
        for (;;) {
            std::string a = lx_.ident();
            uni_.require_agent(a);
            g.insert(a);
            if (lx_.match(",")) continue;
            if (lx_.match("}")) break;
            throw ParseError("expected ',' or '}' in agent group", lx_.pos);
        }
        return g;
    }

    TermPtr parse_concur() {
        TermPtr l = parse_wrong();
        while (lx_.peek() == '^') {
            lx_.match("^");
            l = t_concur(l, parse_wrong());
        }
        return l;
    }

    TermPtr parse_wrong() {
        // try: formula "|{" group "}" term
        std::size_t save = lx_.pos;
        try {
            FormulaParser fp(lx_, uni_);
            FormulaPtr psi = fp.parse();
            if (lx_.match("|{")) {
                AgentSet B = parse_group();
                return t_wrong(std::move(psi), std::move(B), parse_wrong());
            }
        } catch (const ElpError&) {
            // fall through to the plain-term alternatives
        }
        lx_.pos = save;
        return parse_primary();
    }

    TermPtr parse_primary() {
        if (lx_.match("?")) {
            FormulaParser fp(lx_, uni_);
            return t_test(fp.parse());
        }
        if (lx_.match("L{")) {
            AgentSet B = parse_group();
            if (!lx_.match("(")) throw ParseError("expected '('", lx_.pos);
            std::vector<TermPtr> args;
            args.push_back(parse_concur());
            while (lx_.match(",")) args.push_back(parse_concur());
            if (!lx_.match(")")) throw ParseError("expected ')'", lx_.pos);
            return t_learn(std::move(B), std::move(args));
        }
        if (lx_.match("(")) {
            TermPtr t = parse_concur();
            if (!lx_.match(")")) throw ParseError("expected ')'", lx_.pos);
            return t;
        }
        std::size_t save = lx_.pos;
        std::string id = lx_.ident();
        if (id == "mu") {
            std::string x = lx_.ident();
            if (!lx_.match(".")) throw ParseError("expected '.'", lx_.pos);
            return t_mu(std::move(x), parse_concur());
        }
        if (uni_.has_atom(id) || uni_.has_agent(id) || id == "top" ||
            id == "bot")
            throw ParseError("expected a term, got '" + id + "'", save);
        return t_var(std::move(id));
    }
};

}  // namespace detail

inline TermPtr parse_term(const std::string& text, const Universe& uni) {
    detail::FormulaLexer lx(text);
    detail::TermParser p(lx, uni);
    TermPtr t = p.parse();
    if (!lx.eof()) throw ParseError("trailing input after term", lx.pos);
    return t;
}

}  // namespace elp

#endif  // ELP_TERM_HPP
