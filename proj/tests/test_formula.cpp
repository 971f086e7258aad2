#include <catch2/catch_amalgamated.hpp>

#include "elp/formula.hpp"
#include "elp/random_gen.hpp"
#include "helpers.hpp"

using namespace elp;

// ── Parsing ─────────────────────────────────────────────────────────

TEST_CASE("parse builds the expected trees") {
    Universe uni = testutil::figs_uni();

    FormulaPtr f = parse_formula("K{a} p", uni);
    REQUIRE(f->kind == Formula::Kind::Know);
    REQUIRE(f->name == "a");
    REQUIRE(f->lhs->kind == Formula::Kind::Atom);
    REQUIRE(f->lhs->name == "p");

    FormulaPtr d = parse_formula("~(K{a} p & K{a} ~p)", uni);
    REQUIRE(d->kind == Formula::Kind::Not);
    REQUIRE(d->lhs->kind == Formula::Kind::And);
    REQUIRE(d->lhs->lhs->kind == Formula::Kind::Know);
    REQUIRE(d->lhs->rhs->lhs->kind == Formula::Kind::Not);
}

TEST_CASE("out-of-universe identifiers are rejected") {
    Universe uni({"a", "b"}, {"p"});
    REQUIRE_THROWS_AS(parse_formula("K{c} p", uni), UnknownIdentifier);
    REQUIRE_THROWS_AS(parse_formula("q", uni), UnknownIdentifier);
}

TEST_CASE("syntax errors carry a position") {
    Universe uni = testutil::figs_uni();
    try {
        parse_formula("p & & q", uni);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(e.position > 0);
    }
    REQUIRE_THROWS_AS(parse_formula("p q", uni), ParseError);
    REQUIRE_THROWS_AS(parse_formula("(p", uni), ParseError);
}

TEST_CASE("precedence: ~ > & > | > ->") {
    Universe uni({"a"}, {"p", "q", "r", "s"});
    // p -> q | r & ~s reads as p -> (q | (r & (~s)))
    FormulaPtr f = parse_formula("p -> q | r & ~s", uni);
    FormulaPtr g = implies(
        atom("p"), f_or(atom("q"), f_and(atom("r"), f_not(atom("s")))));
    REQUIRE(equal(f, g));

    // -> is right-associative
    REQUIRE(equal(parse_formula("p -> q -> r", uni),
                  implies(atom("p"), implies(atom("q"), atom("r")))));
    // & is left-associative
    REQUIRE(equal(parse_formula("p & q & r", uni),
                  f_and(f_and(atom("p"), atom("q")), atom("r"))));
}

TEST_CASE("sugar normalizes to the three connectives plus Know") {
    Universe uni = testutil::figs_uni();
    // p | q = ~(~p & ~q)
    FormulaPtr f = parse_formula("p | q", uni);
    REQUIRE(f->kind == Formula::Kind::Not);
    REQUIRE(f->lhs->kind == Formula::Kind::And);
    // top and bot are sugar over the first declared atom
    REQUIRE(equal(parse_formula("top", uni), top(uni)));
    REQUIRE(equal(parse_formula("bot", uni), bottom(uni)));
    REQUIRE(equal(iff(atom("p"), atom("q")),
                  f_and(implies(atom("p"), atom("q")),
                        implies(atom("q"), atom("p")))));
}

// ── Printing ────────────────────────────────────────────────────────

TEST_CASE("print/parse round trip is the identity") {
    Universe uni = testutil::figs_uni();
    for (const char* text :
         {"p", "~p", "p & q", "p | q", "p -> q", "K{a} p", "K{a} K{b} ~p",
          "~(K{a} p & K{a} ~p)", "p & (q | r)", "K{b} (p -> q)"}) {
        FormulaPtr f = parse_formula(text, uni);
        std::string printed = print_formula(f);
        REQUIRE(equal(parse_formula(printed, uni), f));
        // canonical form is a fixed point of print∘parse
        REQUIRE(print_formula(parse_formula(printed, uni)) == printed);
    }
}

TEST_CASE("random formulas print and re-parse stably") {
    RandomGen rg(testutil::figs_uni(), 917);
    for (int i = 0; i < 200; ++i) {
        FormulaPtr f = rg.formula(4);
        std::string printed = print_formula(f);
        FormulaPtr g = parse_formula(printed, testutil::figs_uni());
        REQUIRE(equal(f, g));
        REQUIRE(print_formula(g) == printed);
    }
}
