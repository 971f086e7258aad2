#include <catch2/catch_amalgamated.hpp>

#include "elp/action_model.hpp"
#include "elp/compile.hpp"
#include "elp/random_gen.hpp"
#include "helpers.hpp"

using namespace elp;

namespace {

PointedAction test_only(const Universe& uni, const std::string& pre_text) {
    PointedAction p;
    p.model.uni = uni;
    p.model.events = {"e"};
    p.model.pre["e"] = parse_formula(pre_text, uni);
    p.actual = "e";
    return p;
}

}  // namespace

// ── Validation ──────────────────────────────────────────────────────

TEST_CASE("fixture frames are K45") {
    for (const char* name : {"fig1.json", "fig2.json", "fig3.json",
                             "fig4.json", "fig5.json", "fig13.json",
                             "spy-seeing.json", "spy-reading.json",
                             "tell.json", "read.json", "mayread.json"}) {
        PointedAction p = testutil::load_action_fixture(name);
        REQUIRE(frame_class(p.model).is_K45);
    }
    // a single edge-free event is K45 vacuously
    REQUIRE(frame_class(test_only(testutil::bar_uni(), "p").model).is_K45);
    // tell and read are even S5
    REQUIRE(frame_class(testutil::load_action_fixture("tell.json").model)
                .is_S5);
    REQUIRE(frame_class(testutil::load_action_fixture("read.json").model)
                .is_S5);
}

// ── Product update ──────────────────────────────────────────────────

TEST_CASE("product update with a learning action") {
    Universe uni = testutil::bar_uni();
    Oracle oracle = testutil::kd45_oracle(uni);

    KripkeState ms;
    ms.model.uni = uni;
    ms.model.states = {"w1", "w2"};
    EdgeSet eq;
    for (const auto& u : ms.model.states)
        for (const auto& v : ms.model.states) eq.insert({u, v});
    ms.model.rel = {{"a", eq}, {"b", eq}};
    ms.model.val["p"] = {"w1"};
    ms.actual = "w1";

    PointedAction na =
        compile_program(parse_term("L{a}(?p)", uni), oracle).action;
    KripkeState res = product_update(ms, na);
    // only w1 satisfies p, and only the root and the embedded test
    // event have pre p — every surviving state is a (w1, ·) pair
    REQUIRE(satisfies(res, parse_formula("p", uni)));
    for (const auto& s : res.model.states)
        REQUIRE(s.find("w1") != std::string::npos);
    // the a-edges inside the surviving pairs keep a present
    REQUIRE(present_group(res).count("a"));
    REQUIRE(frame_class(res.model).is_K45);
}

TEST_CASE("product update with a pure test erases all relations") {
    Universe uni = testutil::bar_uni();
    Oracle oracle = testutil::kd45_oracle(uni);
    RandomGen rg(uni, 5);
    KripkeState ms = rg.k45_kripke(2);
    ms.model.val["p"] = {ms.model.states[0], ms.model.states[1]};
    ms.actual = ms.model.states[0];
    PointedAction na =
        compile_program(parse_term("?p", uni), oracle).action;
    KripkeState res = product_update(ms, na);
    REQUIRE(res.model.states.size() == 2);
    for (const auto& [a, es] : res.model.rel) REQUIRE(es.empty());
}

TEST_CASE("an actual state violating the precondition is eliminated") {
    Universe uni = testutil::bar_uni();
    Oracle oracle = testutil::kd45_oracle(uni);
    KripkeState ms;
    ms.model.uni = uni;
    ms.model.states = {"w"};
    ms.model.rel = {{"a", {{"w", "w"}}}, {"b", {{"w", "w"}}}};
    ms.actual = "w";  // p false at w
    PointedAction na =
        compile_program(parse_term("L{a}(?p)", uni), oracle).action;
    REQUIRE_THROWS_AS(product_update(ms, na), ActualEliminated);
}

TEST_CASE("K45 closure holds on random product updates") {
    Universe uni = testutil::figs_uni();
    Oracle oracle = testutil::syntactic_oracle(uni);
    RandomGen rg(uni, 3000);
    int done = 0;
    while (done < 30) {
        KripkeState ms = rg.k45_kripke(rg.pick(1, 5));
        PointedAction na = rg.k45_action(rg.pick(1, 5));
        try {
            KripkeState res = product_update(ms, na);
            REQUIRE(frame_class(res.model).is_K45);
            ++done;
        } catch (const ActualEliminated&) {
            // resample
        }
    }
    (void)oracle;
}

// ── Bisimulation ────────────────────────────────────────────────────

TEST_CASE("bisimilarity basics") {
    Oracle oracle = testutil::kd45_oracle(testutil::figs_uni());
    PointedAction f1 = testutil::load_action_fixture("fig1.json");
    PointedAction f2 = testutil::load_action_fixture("fig2.json");
    PointedAction f3 = testutil::load_action_fixture("fig3.json");
    PointedAction f13 = testutil::load_action_fixture("fig13.json");

    REQUIRE(bisimilar(f1, f1, oracle));
    // the b-loop at the root of fig2 has no counterpart in fig1
    REQUIRE_FALSE(bisimilar(f1, f2, oracle));
    REQUIRE_FALSE(bisimilar(f2, f3, oracle));
    // the fixed-point model is bisimilar to the two-event loop model
    REQUIRE(bisimilar(f3, f13, oracle));

    auto w = bisimulation_witness(f3, f13, oracle);
    REQUIRE_FALSE(w.empty());
    bool root_pair = false;
    for (const auto& [u, v] : w)
        if (u == "s" && v == "r1") root_pair = true;
    REQUIRE(root_pair);
}

TEST_CASE("pre clause respects the chosen oracle") {
    Universe uni = testutil::figs_uni();
    PointedAction e1 = test_only(uni, "p");
    PointedAction e2 = test_only(uni, "p & p");
    REQUIRE(bisimilar(e1, e2, testutil::kd45_oracle(uni)));
    REQUIRE_FALSE(bisimilar(e1, e2, testutil::syntactic_oracle(uni)));
}

TEST_CASE("bisimilarity is an equivalence on sampled models") {
    Universe uni = testutil::figs_uni();
    Oracle oracle = testutil::syntactic_oracle(uni);
    RandomGen rg(uni, 600);
    std::vector<PointedAction> ms;
    for (int i = 0; i < 6; ++i) ms.push_back(rg.k45_action(rg.pick(1, 4), 2));
    for (const auto& a : ms) REQUIRE(bisimilar(a, a, oracle));
    for (const auto& a : ms)
        for (const auto& b : ms)
            REQUIRE(bisimilar(a, b, oracle) == bisimilar(b, a, oracle));
    for (const auto& a : ms)
        for (const auto& b : ms)
            for (const auto& c : ms)
                if (bisimilar(a, b, oracle) && bisimilar(b, c, oracle))
                    REQUIRE(bisimilar(a, c, oracle));
}

TEST_CASE("euclidean self-loop lemma on random K45 models") {
    RandomGen rg(testutil::figs_uni(), 41);
    for (int i = 0; i < 40; ++i) {
        PointedAction na = rg.k45_action(rg.pick(1, 6));
        for (const auto& [a, es] : na.model.rel)
            for (const auto& [v, s] : es) REQUIRE(es.count({s, s}));
    }
}

// ── Agent bisimulation ──────────────────────────────────────────────

TEST_CASE("agent bisimilarity basics") {
    Universe uni = testutil::figs_uni();
    Oracle oracle = testutil::kd45_oracle(uni);
    PointedAction f2 = testutil::load_action_fixture("fig2.json");
    REQUIRE(agent_bisimilar(f2, f2, "a", oracle));
    REQUIRE(agent_bisimilar(f2, f2, "b", oracle));

    // edge-free test events are a-bisimilar for every agent, vacuously
    PointedAction e1 = test_only(uni, "p");
    PointedAction e2 = test_only(uni, "q");
    REQUIRE(agent_bisimilar(e1, e2, "a", oracle));
    REQUIRE(agent_bisimilar(e1, e2, "b", oracle));
}

TEST_CASE("mayread argument models: b-bisimilar always, a-bisimilar iff equal") {
    Oracle oracle = testutil::kd45_oracle(testutil::bar_uni());
    std::vector<PointedAction> n = {
        testutil::load_action_fixture("mayread-n1.json"),
        testutil::load_action_fixture("mayread-n2.json"),
        testutil::load_action_fixture("mayread-n3.json")};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            REQUIRE(agent_bisimilar(n[i], n[j], "b", oracle));
            REQUIRE(agent_bisimilar(n[i], n[j], "a", oracle) == (i == j));
        }
}

// ── Reachability helpers ────────────────────────────────────────────

TEST_CASE("restrict_reachable drops unreachable events") {
    PointedAction f13 = testutil::load_action_fixture("fig13.json");
    PointedAction r = restrict_reachable(f13);
    REQUIRE(r.model.events.size() == 3);
    Oracle oracle = testutil::kd45_oracle(f13.model.uni);
    REQUIRE(bisimilar(r, f13, oracle));
}
