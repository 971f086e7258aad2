#include <catch2/catch_amalgamated.hpp>

#include "elp/term.hpp"
#include "elp/random_gen.hpp"
#include "helpers.hpp"

using namespace elp;

namespace {

const Universe& uni() {
    static Universe u = testutil::figs_uni();
    return u;
}

TermPtr t(const std::string& text) { return parse_term(text, uni()); }

Oracle oracle() { return testutil::syntactic_oracle(uni()); }

}  // namespace

// ── Parsing ─────────────────────────────────────────────────────────

TEST_CASE("parse builds the expected term trees") {
    TermPtr a = t("L{b}(p |{a} L{a}(?q))");
    REQUIRE(a->kind == Term::Kind::Learn);
    REQUIRE(a->group == AgentSet{"b"});
    REQUIRE(a->args.size() == 1);
    const TermPtr& w = a->args[0];
    REQUIRE(w->kind == Term::Kind::Wrong);
    REQUIRE(w->group == AgentSet{"a"});
    REQUIRE(equal(w->formula, atom("p")));
    REQUIRE(w->args[0]->kind == Term::Kind::Learn);
    REQUIRE(w->args[0]->args[0]->kind == Term::Kind::Test);

    TermPtr m = t("mu X. L{b}(p |{a} L{a}(q |{b} L{b}(X)))");
    REQUIRE(m->kind == Term::Kind::Mu);
    REQUIRE(m->name == "X");
    REQUIRE(free_vars(m).empty());
    REQUIRE(free_vars(m->args[0]) == std::set<std::string>{"X"});

    // concur is left-associative, |{} binds tighter than ^
    TermPtr c = t("?p ^ ?q ^ ?r");
    REQUIRE(c->kind == Term::Kind::Concur);
    REQUIRE(c->args[0]->kind == Term::Kind::Concur);
    REQUIRE(c->args[1]->kind == Term::Kind::Test);
}

TEST_CASE("parse errors and unknown identifiers") {
    REQUIRE_THROWS_AS(t("L{c}(?p)"), UnknownIdentifier);
    REQUIRE_THROWS_AS(t("L{b}(?p"), ParseError);
    REQUIRE_THROWS_AS(t("?p ?q"), ParseError);
    // atoms and agents cannot stand alone as terms
    REQUIRE_THROWS_AS(t("p"), ParseError);
}

TEST_CASE("mu X. X parses but is rejected as ill-formed") {
    TermPtr m = t("mu X. X");
    REQUIRE(m->kind == Term::Kind::Mu);
    REQUIRE_THROWS_AS(well_formed(m, oracle()), IllFormed);
}

// ── group / pre ─────────────────────────────────────────────────────

TEST_CASE("group and pre follow the recursive rules") {
    TermMeta m1 = term_meta(t("?p"));
    REQUIRE(m1.group.has_value());
    REQUIRE(m1.group->empty());
    REQUIRE(equal(*m1.pre, atom("p")));

    TermMeta m2 = term_meta(t("L{b}(p |{a} L{a}(?q))"));
    REQUIRE(*m2.group == AgentSet{"a", "b"});
    REQUIRE(equal(*m2.pre, atom("p")));

    TermMeta m3 = term_meta(t_var("X"));
    REQUIRE_FALSE(m3.group.has_value());
    REQUIRE_FALSE(m3.pre.has_value());

    // learn: B ∪ group(α₁); pre from the first argument
    TermMeta m4 = term_meta(t("L{a}(?p, ?q)"));
    REQUIRE(*m4.group == AgentSet{"a"});
    REQUIRE(equal(*m4.pre, atom("p")));
}

TEST_CASE("well-formedness side conditions") {
    // disjoint groups, equal pres: the concur fixture program
    REQUIRE_NOTHROW(well_formed(
        t("(p |{a} L{a}(?q)) ^ (p |{b} L{b}(?p))"), oracle()));
    // pre mismatch
    REQUIRE_THROWS_AS(well_formed(t("?p ^ ?q"), oracle()), IllFormed);
    // group overlap
    REQUIRE_THROWS_AS(
        well_formed(t("(p |{a} L{a}(?q)) ^ (p |{a} L{a}(?p))"), oracle()),
        IllFormed);
    // wrong-learning needs B ⊆ group(arg)
    REQUIRE_THROWS_AS(well_formed(t("q |{a,b} L{a}(?r)"), oracle()),
                      IllFormed);
    // with the KD45 oracle, pre equality is up to logical equivalence
    REQUIRE_NOTHROW(well_formed(t("?p ^ ?(p & p)"),
                                testutil::kd45_oracle(uni())));
}

// ── dependent μ count ───────────────────────────────────────────────

TEST_CASE("dependent mu count on the canonical examples") {
    REQUIRE(dependent_mu_count(t("L{b}(p |{a} L{a}(?q))")) == 0);
    REQUIRE(dependent_mu_count(
                t("mu X. L{b}(p |{a} L{a}(q |{b} L{b}(X)))")) == 1);
    // independent μs: neither body mentions the other's variable
    REQUIRE(dependent_mu_count(
                t("(r |{a} mu X. L{a}(p |{b} L{b}(q |{a} X))) ^ "
                  "(r |{b} mu Y. L{b}(q |{a} L{a}(p |{b} Y)))")) == 1);
    // dependent μs: the inner body uses the outer variable
    REQUIRE(dependent_mu_count(
                t("mu X. L{a}(p |{b} mu Y. L{b}((q |{a} X) ^ "
                  "(q |{b} L{b}(r |{a} Y))))")) == 2);
    // a vacuous binder does not count
    REQUIRE(dependent_mu_count(t("mu X. L{a}(?p)")) == 0);
}

// ── Printing ────────────────────────────────────────────────────────

TEST_CASE("print/parse round trip on canonical fixtures") {
    for (const char* name :
         {"fig1.txt", "fig2.txt", "fig3.txt", "fig4.txt", "fig5.txt"}) {
        std::string text = testutil::load_text_fixture(name);
        TermPtr a = t(text);
        std::string printed = print_term(a);
        REQUIRE(equal(parse_term(printed, uni()), a));
        REQUIRE(print_term(parse_term(printed, uni())) == printed);
    }
}

TEST_CASE("random BLP terms are well-formed and round trip") {
    RandomGen rg(uni(), 246);
    Oracle orc = oracle();
    for (int i = 0; i < 60; ++i) {
        TermPtr a = rg.blp(3);
        REQUIRE_NOTHROW(well_formed(a, orc));
        REQUIRE(free_vars(a).empty());
        TermMeta m = term_meta(a);
        REQUIRE(m.group.has_value());
        REQUIRE(m.pre.has_value());
        REQUIRE(dependent_mu_count(a) == 0);
        std::string printed = print_term(a);
        REQUIRE(equal(parse_term(printed, uni()), a));
    }
}
