#include <catch2/catch_amalgamated.hpp>

#include "elp/kd45.hpp"
#include "elp/random_gen.hpp"
#include "helpers.hpp"

using namespace elp;

namespace {

const Universe& uni() {
    static Universe u = testutil::figs_uni();
    return u;
}

FormulaPtr f(const std::string& text) { return parse_formula(text, uni()); }

}  // namespace

// ── Satisfiability ──────────────────────────────────────────────────

TEST_CASE("satisfiability basics") {
    // belief may be false at the actual world (no T axiom)
    REQUIRE(kd45_satisfiable(f("K{a} p & ~p"), uni()));
    // axiom D forbids contradictory belief
    REQUIRE_FALSE(kd45_satisfiable(f("K{a} p & K{a} ~p"), uni()));
    REQUIRE(kd45_satisfiable(f("p"), uni()));
    REQUIRE_FALSE(kd45_satisfiable(f("p & ~p"), uni()));
    // multi-agent: b may believe a's belief is wrong
    REQUIRE(kd45_satisfiable(f("K{a} p & K{b} K{a} ~p"), uni()));
}

TEST_CASE("validity basics") {
    REQUIRE(kd45_valid(f("K{a} p -> K{a} K{a} p"), uni()));   // A4
    REQUIRE(kd45_valid(f("~K{a} p -> K{a} ~K{a} p"), uni())); // A5
    REQUIRE(kd45_valid(f("~(K{a} p & K{a} ~p)"), uni()));     // D
    REQUIRE_FALSE(kd45_valid(f("K{a} p -> p"), uni()));       // no T
    REQUIRE_FALSE(kd45_valid(f("p -> K{a} p"), uni()));
}

TEST_CASE("equivalence basics") {
    REQUIRE(kd45_equivalent(f("p"), f("p & p"), uni()));
    REQUIRE(kd45_equivalent(f("K{a} K{a} p"), f("K{a} p"), uni()));
    REQUIRE_FALSE(kd45_equivalent(f("p"), f("K{a} p"), uni()));
    REQUIRE(kd45_equivalent(f("top"), f("q | ~q"), uni()));
    REQUIRE_FALSE(kd45_equivalent(f("K{a} p"), f("K{b} p"), uni()));
}

// ── Axiom schemes over random instances ─────────────────────────────

TEST_CASE("axiom schemes A1/A2/A4/A5/D hold on random instances") {
    RandomGen rg(uni(), 404);
    for (int i = 0; i < 40; ++i) {
        FormulaPtr x = rg.formula(3), y = rg.formula(3);
        std::string ag = rg.pick_of(uni().agents);
        // A1: φ → (ψ → φ)
        REQUIRE(kd45_valid(implies(x, implies(y, x)), uni()));
        // A2: K_i(φ→ψ) → (K_iφ → K_iψ)
        REQUIRE(kd45_valid(implies(know(ag, implies(x, y)),
                                   implies(know(ag, x), know(ag, y))),
                           uni()));
        // A4: K_iφ → K_iK_iφ
        REQUIRE(kd45_valid(
            implies(know(ag, x), know(ag, know(ag, x))), uni()));
        // A5: ¬K_iφ → K_i¬K_iφ
        REQUIRE(kd45_valid(
            implies(f_not(know(ag, x)), know(ag, f_not(know(ag, x)))),
            uni()));
        // D: ¬(K_iφ ∧ K_i¬φ)
        REQUIRE(kd45_valid(f_not(f_and(know(ag, x), know(ag, f_not(x)))),
                           uni()));
    }
}

TEST_CASE("equivalence is an equivalence relation on samples") {
    RandomGen rg(uni(), 77);
    std::vector<FormulaPtr> fs;
    for (int i = 0; i < 8; ++i) fs.push_back(rg.formula(2));
    for (const auto& a : fs) REQUIRE(kd45_equivalent(a, a, uni()));
    for (const auto& a : fs)
        for (const auto& b : fs)
            REQUIRE(kd45_equivalent(a, b, uni()) ==
                    kd45_equivalent(b, a, uni()));
    for (const auto& a : fs)
        for (const auto& b : fs)
            for (const auto& c : fs)
                if (kd45_equivalent(a, b, uni()) &&
                    kd45_equivalent(b, c, uni()))
                    REQUIRE(kd45_equivalent(a, c, uni()));
}

// ── Witness models ──────────────────────────────────────────────────

TEST_CASE("satisfiable formulas get a confirmed finite KD45 witness") {
    RandomGen rg(uni(), 55);
    int confirmed = 0;
    for (int i = 0; i < 60; ++i) {
        FormulaPtr x = rg.formula(3);
        auto w = kd45_witness(x, uni());
        REQUIRE(w.has_value() == kd45_satisfiable(x, uni()));
        if (w) {
            REQUIRE(frame_class(w->model).is_KD45);
            REQUIRE(is_applicable(*w, x));
            REQUIRE(satisfies(*w, x));
            ++confirmed;
        }
    }
    REQUIRE(confirmed > 0);
}

TEST_CASE("the K{a} p -> p countermodel is confirmed by satisfies") {
    auto w = kd45_witness(f_not(f("K{a} p -> p")), uni());
    REQUIRE(w.has_value());
    REQUIRE(frame_class(w->model).is_KD45);
    REQUIRE(satisfies(*w, f("K{a} p & ~p")));
}

// ── Distinguishing formulas & oracle ────────────────────────────────

TEST_CASE("distinguishing formulas are pairwise non-equivalent") {
    for (int n : {1, 2, 4, 6}) {
        auto fs = distinguishing_formulas(n, uni());
        REQUIRE(static_cast<int>(fs.size()) == n);
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j)
                REQUIRE_FALSE(kd45_equivalent(fs[i], fs[j], uni()));
    }
}

TEST_CASE("oracle modes") {
    Oracle synt = testutil::syntactic_oracle(uni());
    Oracle kd = testutil::kd45_oracle(uni());
    REQUIRE(synt.equivalent(f("p"), f("p")));
    REQUIRE_FALSE(synt.equivalent(f("p"), f("p & p")));
    REQUIRE(kd.equivalent(f("p"), f("p & p")));
    REQUIRE_FALSE(kd.equivalent(f("p"), f("q")));
}

TEST_CASE("prover reports a resource bound instead of guessing") {
    // 20 nested distinct K-subformulas exceed the default base cap
    FormulaPtr x = atom("p");
    for (int i = 0; i < 20; ++i) x = know(i % 2 ? "a" : "b", x);
    REQUIRE_THROWS_AS(kd45_satisfiable(x, uni()), ResourceBound);
}
