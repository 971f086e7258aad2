#ifndef ELP_FORMULA_HPP
#define ELP_FORMULA_HPP

#include <cctype>
#include <memory>
#include <sstream>
#include <string>
#include <utility>

#include "elp/universe.hpp"

namespace elp {

// ── Formula trees ───────────────────────────────────────────────────
//
// The language is atoms, negation, conjunction and K_i.  Or / Implies /
// Iff / Top / Bottom are sugar and are normalized away at construction,
// so every semantic operation only ever sees the four core node kinds.

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Atom, Not, And, Know };

    Kind kind;
    std::string name;  // atom id (Atom) or agent id (Know)
    FormulaPtr lhs, rhs;

    Formula(Kind k, std::string n, FormulaPtr l, FormulaPtr r)
        : kind(k), name(std::move(n)), lhs(std::move(l)), rhs(std::move(r)) {}
};

inline FormulaPtr atom(std::string p) {
    return std::make_shared<Formula>(Formula::Kind::Atom, std::move(p),
                                     nullptr, nullptr);
}
inline FormulaPtr f_not(FormulaPtr f) {
    return std::make_shared<Formula>(Formula::Kind::Not, "", std::move(f),
                                     nullptr);
}
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula::Kind::And, "", std::move(a),
                                     std::move(b));
}
inline FormulaPtr know(std::string agent, FormulaPtr f) {
    return std::make_shared<Formula>(Formula::Kind::Know, std::move(agent),
                                     std::move(f), nullptr);
}

// Sugar, normalized immediately.
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    return f_not(f_and(f_not(std::move(a)), f_not(std::move(b))));
}
inline FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
    return f_not(f_and(std::move(a), f_not(std::move(b))));
}
inline FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
    return f_and(implies(a, b), implies(b, a));
}
/// Top is p ∨ ¬p for the universe's designated (first) atom.
inline FormulaPtr top(const Universe& uni) {
    if (uni.atoms.empty()) throw ElpError("top needs at least one atom");
    return f_or(atom(uni.atoms.front()), f_not(atom(uni.atoms.front())));
}
inline FormulaPtr bottom(const Universe& uni) {
    return f_not(top(uni));
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name) return false;
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

// ── Printing ────────────────────────────────────────────────────────
//
// Canonical form: ~ and K bind tightest, then &, then |, then ->.  The
// printer emits the core connectives only (sugar was normalized), with
// minimal parentheses; print∘parse is identity up to whitespace.

namespace detail {
inline void print_rec(const FormulaPtr& f, std::ostream& os) {
    switch (f->kind) {
        case Formula::Kind::Atom:
            os << f->name;
            break;
        case Formula::Kind::Not:
            os << "~";
            if (f->lhs->kind == Formula::Kind::And) {
                os << "(";
                print_rec(f->lhs, os);
                os << ")";
            } else {
                print_rec(f->lhs, os);
            }
            break;
        case Formula::Kind::And:
            // left-associative chain; parenthesize a right-nested And
            if (f->lhs->kind == Formula::Kind::And) {
                print_rec(f->lhs, os);
            } else {
                print_rec(f->lhs, os);
            }
            os << " & ";
            if (f->rhs->kind == Formula::Kind::And) {
                os << "(";
                print_rec(f->rhs, os);
                os << ")";
            } else {
                print_rec(f->rhs, os);
            }
            break;
        case Formula::Kind::Know:
            os << "K{" << f->name << "} ";
            if (f->lhs->kind == Formula::Kind::And) {
                os << "(";
                print_rec(f->lhs, os);
                os << ")";
            } else {
                print_rec(f->lhs, os);
            }
            break;
    }
}
}  // namespace detail

inline std::string print_formula(const FormulaPtr& f) {
    std::ostringstream os;
    detail::print_rec(f, os);
    return os.str();
}

// ── Parsing ─────────────────────────────────────────────────────────
//
//   form := atom | "~" form | form "&" form | form "|" form
//         | form "->" form | "K{" agent "}" form | "(" form ")"
//         | "top" | "bot"
// precedence ~ > & > | > -> ; & and | left-associative, -> right.

namespace detail {

struct FormulaLexer {
    const std::string& text;
    std::size_t pos = 0;
    explicit FormulaLexer(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool match(const std::string& s) {
        skip_ws();
        if (text.compare(pos, s.size(), s) == 0) {
            pos += s.size();
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                text[pos] == '_'))
            ++pos;
        if (start == pos) throw ParseError("expected identifier", pos);
        return text.substr(start, pos - start);
    }
};

class FormulaParser {
public:
    FormulaParser(FormulaLexer& lx, const Universe& uni)
        : lx_(lx), uni_(uni) {}

    // Stops at any token that cannot continue a formula (e.g. "|{", ")",
    // ",", "^"), leaving it unconsumed; the term parser relies on this.
    FormulaPtr parse() { return parse_implies(); }

private:
    FormulaLexer& lx_;
    const Universe& uni_;

    bool wrong_bar_ahead() {
        // '|' immediately followed by '{' belongs to the term grammar.
        std::size_t save = lx_.pos;
        lx_.skip_ws();
        bool r = lx_.pos + 1 < lx_.text.size() && lx_.text[lx_.pos] == '|' &&
                 lx_.text[lx_.pos + 1] == '{';
        lx_.pos = save;
        return r;
    }

    FormulaPtr parse_implies() {
        FormulaPtr l = parse_or();
        if (lx_.match("->")) return implies(l, parse_implies());
        return l;
    }
    FormulaPtr parse_or() {
        FormulaPtr l = parse_and();
        while (!wrong_bar_ahead() && lx_.peek() == '|') {
            lx_.match("|");
            l = f_or(l, parse_and());
        }
        return l;
    }
    FormulaPtr parse_and() {
        FormulaPtr l = parse_unary();
        while (lx_.peek() == '&') {
            lx_.match("&");
            l = f_and(l, parse_unary());
        }
        return l;
    }
    FormulaPtr parse_unary() {
        if (lx_.match("~")) return f_not(parse_unary());
        if (lx_.match("K{")) {
            std::string ag = lx_.ident();
            uni_.require_agent(ag);
            if (!lx_.match("}")) throw ParseError("expected '}'", lx_.pos);
            return know(ag, parse_unary());
        }
        if (lx_.match("(")) {
            FormulaPtr f = parse_implies();
            if (!lx_.match(")")) throw ParseError("expected ')'", lx_.pos);
            return f;
        }
        std::string id = lx_.ident();
        if (id == "top") return top(uni_);
        if (id == "bot") return bottom(uni_);
        uni_.require_atom(id);
        return atom(id);
    }
};

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& text, const Universe& uni) {
    detail::FormulaLexer lx(text);
    detail::FormulaParser p(lx, uni);
    FormulaPtr f = p.parse();
    if (!lx.eof()) throw ParseError("trailing input after formula", lx.pos);
    return f;
}

}  // namespace elp

#endif  // ELP_FORMULA_HPP
