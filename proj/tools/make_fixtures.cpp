// ── Fixture corpus generator ────────────────────────────────────────
//
// Writes the fixture models and expected-program texts into the given
// directory (default: fixtures/).  Every model is spelled out literally
// here — none of them is produced by the compiler — so the corpus can
// serve as an independent check on it.

#include <fstream>
#include <iostream>
#include <string>

#include "elp/action_model.hpp"
#include "elp/json_io.hpp"
#include "elp/kripke.hpp"

using namespace elp;

namespace {

std::string dir;

void write_text(const std::string& name, const std::string& text) {
    std::ofstream out(dir + "/" + name);
    if (!out) throw ElpError("cannot write " + name);
    out << text << "\n";
}

void write_action(const std::string& name, const Universe& uni,
                  std::vector<std::string> events,
                  std::map<std::string, EdgeSet> rel,
                  std::vector<std::pair<std::string, std::string>> pres,
                  const std::string& actual) {
    PointedAction p;
    p.model.uni = uni;
    p.model.events = std::move(events);
    p.model.rel = std::move(rel);
    for (auto& [e, f] : pres) p.model.pre[e] = parse_formula(f, uni);
    p.actual = actual;
    p.model.validate_refs();
    if (!frame_class(p.model).is_K45)
        throw ElpError(name + " is not K45");
    save_json(p, dir + "/" + name);
}

}  // namespace

int main(int argc, char** argv) {
    dir = argc > 1 ? argv[1] : "fixtures";
    Universe figs({"a", "b"}, {"p", "q", "r"});
    Universe bar({"a", "b"}, {"p"});

    // ── figure models (φ=p, ψ=q, χ=r) ───────────────────────────────
    write_action("fig1.json", figs, {"s", "t"},
                 {{"a", {{"s", "t"}, {"t", "t"}}}},
                 {{"s", "p"}, {"t", "q"}}, "s");
    write_action("fig2.json", figs, {"s", "t"},
                 {{"a", {{"s", "t"}, {"t", "t"}}}, {"b", {{"s", "s"}}}},
                 {{"s", "p"}, {"t", "q"}}, "s");
    write_action("fig3.json", figs, {"s", "t"},
                 {{"a", {{"s", "t"}, {"t", "t"}}},
                  {"b", {{"s", "s"}, {"t", "s"}}}},
                 {{"s", "p"}, {"t", "q"}}, "s");
    write_action("fig4.json", figs, {"s", "t", "u"},
                 {{"a", {{"s", "t"}, {"t", "t"}}},
                  {"b", {{"s", "s"}, {"s", "u"}, {"u", "s"}, {"u", "u"}}}},
                 {{"s", "p"}, {"t", "q"}, {"u", "r"}}, "s");
    write_action("fig5.json", figs, {"s", "t", "u"},
                 {{"a", {{"s", "t"}, {"t", "t"}}},
                  {"b", {{"s", "u"}, {"u", "u"}}}},
                 {{"s", "p"}, {"t", "q"}, {"u", "p"}}, "s");
    // the fixed point of L_b(p|_a L_a(q|_b L_b(X))), worked out by hand
    // (w1, w2 are the unreachable wrong-learning intermediates)
    write_action("fig13.json", figs, {"r1", "r2", "r3", "w1", "w2"},
                 {{"a",
                   {{"r1", "r2"}, {"r2", "r2"}, {"r3", "r2"}, {"w1", "r2"}}},
                  {"b", {{"r1", "r1"}, {"r2", "r3"}, {"r3", "r3"},
                         {"w2", "r3"}}}},
                 {{"r1", "p"},
                  {"r2", "q"},
                  {"r3", "p"},
                  {"w1", "p"},
                  {"w2", "q"}},
                 "r1");

    // ── epistemic state with a non-present agent ────────────────────
    {
        KripkeState ms;
        ms.model.uni = bar;
        ms.model.states = {"s", "t"};
        ms.model.rel = {{"a", {{"s", "t"}, {"t", "t"}}}, {"b", {{"s", "s"}}}};
        ms.model.val["p"] = {"s"};
        ms.actual = "s";
        ms.model.validate_refs();
        save_json(ms, dir + "/fig6-state.json");
    }

    // ── bar scenarios ───────────────────────────────────────────────
    write_action("spy-seeing.json", bar, {"s", "t", "u", "v"},
                 {{"a", {{"s", "v"}, {"v", "v"}, {"t", "u"}, {"u", "u"}}},
                  {"b", {{"s", "s"}, {"s", "t"}, {"t", "s"}, {"t", "t"}}}},
                 {{"s", "p"}, {"v", "p"}, {"t", "~p"}, {"u", "~p"}}, "s");
    write_action("spy-reading.json", bar, {"s", "t"},
                 {{"a", {{"s", "t"}, {"t", "t"}}}, {"b", {{"s", "s"}}}},
                 {{"s", "p"}, {"t", "p"}}, "s");
    write_action("tell.json", bar, {"s"},
                 {{"a", {{"s", "s"}}}, {"b", {{"s", "s"}}}}, {{"s", "p"}},
                 "s");
    write_action("read.json", bar, {"s", "t"},
                 {{"a", {{"s", "s"}, {"t", "t"}}},
                  {"b", {{"s", "s"}, {"s", "t"}, {"t", "s"}, {"t", "t"}}}},
                 {{"s", "p"}, {"t", "~p"}}, "s");
    // the b-cluster closes up to a complete digraph on {1,2,3} so the
    // frame stays transitive
    write_action(
        "mayread.json", bar, {"e1", "e2", "e3"},
        {{"a", {{"e1", "e1"}, {"e2", "e2"}, {"e3", "e3"}}},
         {"b",
          {{"e1", "e1"}, {"e1", "e2"}, {"e1", "e3"}, {"e2", "e1"},
           {"e2", "e2"}, {"e2", "e3"}, {"e3", "e1"}, {"e3", "e2"},
           {"e3", "e3"}}}},
        {{"e1", "p"}, {"e2", "~p"}, {"e3", "p | ~p"}}, "e1");
    write_action("mayread-n1.json", bar, {"s1", "t1", "v1"},
                 {{"a", {{"s1", "t1"}, {"t1", "t1"}}},
                  {"b", {{"s1", "v1"}, {"v1", "v1"}}}},
                 {{"s1", "p"}, {"t1", "p"}, {"v1", "p | ~p"}}, "s1");
    write_action("mayread-n2.json", bar, {"s2", "t2", "v2"},
                 {{"a", {{"s2", "t2"}, {"t2", "t2"}}},
                  {"b", {{"s2", "v2"}, {"v2", "v2"}}}},
                 {{"s2", "~p"}, {"t2", "~p"}, {"v2", "p | ~p"}}, "s2");
    write_action("mayread-n3.json", bar, {"s3", "t3", "v3"},
                 {{"a", {{"s3", "t3"}, {"t3", "t3"}}},
                  {"b", {{"s3", "v3"}, {"v3", "v3"}}}},
                 {{"s3", "p | ~p"}, {"t3", "p | ~p"}, {"v3", "p | ~p"}},
                 "s3");

    // ── expected programs ───────────────────────────────────────────
    write_text("fig1.txt", "p |{a} L{a}(?q)");
    write_text("fig2.txt", "L{b}(p |{a} L{a}(?q))");
    write_text("fig3.txt", "mu X. L{b}(p |{a} L{a}(q |{b} L{b}(X)))");
    write_text("fig4.txt", "L{b}(p |{a} L{a}(?q), ?r)");
    write_text("fig5.txt", "(p |{a} L{a}(?q)) ^ (p |{b} L{b}(?p))");
    write_text("spy-seeing.txt", "L{b}(L{a}(?p), L{a}(?~p))");
    write_text("spy-reading.txt", "L{b}(L{a}(?p))");
    write_text("tell.txt", "L{a,b}(?p)");
    write_text("read.txt", "L{a,b}(L{a}(?p), L{a}(?~p))");
    write_text("mayread.txt",
               "L{a,b}(L{a}(?p) ^ (p |{b} L{b}(?(p | ~p))), "
               "L{a}(?~p) ^ (~p |{b} L{b}(?(p | ~p))), "
               "L{a}(?(p | ~p)) ^ L{b}(?(p | ~p)))");
    write_text("bothmayread.txt",
               "L{a,b}(L{a}(?p) ^ L{b}(?p), "
               "L{a}(?~p) ^ L{b}(?~p), "
               "L{a}(?(p | ~p)) ^ L{b}(?(p | ~p)), "
               "L{a}(?p) ^ (p |{b} L{b}(?(p | ~p))), "
               "L{a}(?~p) ^ (~p |{b} L{b}(?(p | ~p))), "
               "L{b}(?p) ^ (p |{a} L{a}(?(p | ~p))), "
               "L{b}(?~p) ^ (~p |{a} L{a}(?(p | ~p))))");

    std::cout << "fixtures written to " << dir << "\n";
    return 0;
}
