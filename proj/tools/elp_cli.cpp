// ── elp — epistemic learning-program calculus CLI ───────────────────
//
// Subcommands: parse | compile | update | bisim | abisim | synthesize |
// classify | witness | check | mc | prove | export-dot.  Human-readable
// output by default, machine-readable with --json.  Exit codes: 0
// success, 1 domain error (or negative bisim/verify outcome), 2 usage.
// ELP_ORACLE=syntactic|kd45 selects the precondition-equivalence
// oracle (default kd45).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elp/compile.hpp"
#include "elp/dot.hpp"
#include "elp/hierarchy.hpp"
#include "elp/json_io.hpp"
#include "elp/kd45.hpp"
#include "elp/synthesize.hpp"
#include "elp/term.hpp"
#include "elp/transform.hpp"
#include "elp/universe.hpp"

namespace {

using nlohmann::json;

std::vector<std::string> split_ids(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

elp::Oracle make_oracle(const elp::Universe& uni) {
    const char* env = std::getenv("ELP_ORACLE");
    std::string mode = env ? env : "kd45";
    if (mode == "syntactic")
        return {elp::Oracle::Mode::Syntactic, uni};
    if (mode == "kd45") return {elp::Oracle::Mode::Kd45, uni};
    throw elp::ElpError("ELP_ORACLE must be 'syntactic' or 'kd45'");
}

std::string error_name(const elp::ElpError& e) {
    if (dynamic_cast<const elp::ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const elp::UnknownIdentifier*>(&e))
        return "UnknownIdentifier";
    if (dynamic_cast<const elp::ResourceBound*>(&e)) return "ResourceBound";
    if (dynamic_cast<const elp::NotApplicable*>(&e)) return "NotApplicable";
    if (dynamic_cast<const elp::ActualEliminated*>(&e))
        return "ActualEliminated";
    if (dynamic_cast<const elp::IllFormed*>(&e)) return "IllFormed";
    if (dynamic_cast<const elp::VariableNotFree*>(&e))
        return "VariableNotFree";
    if (dynamic_cast<const elp::NotATree*>(&e)) return "NotATree";
    if (dynamic_cast<const elp::CapExceeded*>(&e)) return "CapExceeded";
    if (dynamic_cast<const elp::UniverseTooSmall*>(&e))
        return "UniverseTooSmall";
    return "Error";
}

elp::PointedAction load_action(const std::string& path) {
    return elp::action_from_json(elp::load_json(path));
}

void write_out(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw elp::ElpError("cannot write " + path);
    out << text;
}

json classify_json(const elp::PointedAction& na, const elp::Oracle& oracle,
                   std::optional<int> dependent_mu) {
    elp::ModelClass mc = elp::classify_model(na, oracle);
    json j;
    j["depth"] = mc.depth;
    j["dependent_mu"] =
        dependent_mu ? json(*dependent_mu) : json(nullptr);
    j["premise_distinct_pre"] = mc.premise_distinct_pre;
    return j;
}

struct Options {
    bool as_json = false;
    std::string agents = "a,b";
    std::string atoms = "p,q,r";
    std::string text;
    std::string file_a, file_b;
    std::string agent;
    std::string program;
    std::string output;
    std::string dot_file;
    std::string mode = "auto";
    bool verify = false;
    bool force_formula = false;
    bool sat = false;
    int k = 1;

    elp::Universe universe() const {
        return {split_ids(agents), split_ids(atoms)};
    }
};

int cmd_parse(const Options& o) {
    elp::Universe uni = o.universe();
    if (!o.force_formula) {
        try {
            elp::TermPtr t = elp::parse_term(o.text, uni);
            elp::TermMeta m = elp::term_meta(t);
            if (o.as_json) {
                json j;
                j["kind"] = "program";
                j["text"] = elp::print_term(t);
                j["free_vars"] = elp::free_vars(t);
                j["group"] = m.group ? json(std::vector<std::string>(
                                           m.group->begin(), m.group->end()))
                                     : json(nullptr);
                j["pre"] =
                    m.pre ? json(elp::print_formula(*m.pre)) : json(nullptr);
                std::cout << elp::dump_canonical(j);
            } else {
                std::cout << elp::print_term(t) << "\n";
            }
            return 0;
        } catch (const elp::ParseError&) {
            // fall through to the formula grammar
        }
    }
    elp::FormulaPtr f = elp::parse_formula(o.text, uni);
    if (o.as_json) {
        json j;
        j["kind"] = "formula";
        j["text"] = elp::print_formula(f);
        std::cout << elp::dump_canonical(j);
    } else {
        std::cout << elp::print_formula(f) << "\n";
    }
    return 0;
}

int cmd_compile(const Options& o) {
    elp::Universe uni = o.universe();
    elp::Oracle oracle = make_oracle(uni);
    elp::TermPtr t = elp::parse_term(o.text, uni);
    elp::CompileResult r = elp::compile_program(t, oracle);
    for (const auto& w : r.warnings)
        std::cerr << w.kind << ": " << w.detail << "\n";
    write_out(elp::dump_canonical(elp::to_json(r.action)), o.output);
    if (!o.dot_file.empty()) {
        std::ofstream out(o.dot_file);
        if (!out) throw elp::ElpError("cannot write " + o.dot_file);
        out << elp::to_dot(r.action);
    }
    return 0;
}

int cmd_update(const Options& o) {
    elp::KripkeState ms = elp::kripke_from_json(elp::load_json(o.file_a));
    elp::PointedAction na;
    if (!o.program.empty()) {
        elp::Oracle oracle = make_oracle(ms.model.uni);
        elp::TermPtr t = elp::parse_term(o.program, ms.model.uni);
        na = elp::compile_program(t, oracle).action;
    } else if (!o.file_b.empty()) {
        na = load_action(o.file_b);
    } else {
        throw elp::ElpError("update needs --program or --action");
    }
    elp::KripkeState res = elp::product_update(ms, na);
    write_out(elp::dump_canonical(elp::to_json(res)), o.output);
    return 0;
}

int cmd_bisim(const Options& o) {
    elp::PointedAction a = load_action(o.file_a);
    elp::PointedAction b = load_action(o.file_b);
    elp::Oracle oracle = make_oracle(a.model.uni);
    bool yes = elp::bisimilar(a, b, oracle);
    if (o.as_json) {
        json j;
        j["bisimilar"] = yes;
        if (yes) {
            json w = json::array();
            for (const auto& [u, v] :
                 elp::bisimulation_witness(a, b, oracle))
                w.push_back({u, v});
            j["witness"] = w;
        }
        std::cout << elp::dump_canonical(j);
    } else {
        std::cout << (yes ? "bisimilar" : "not bisimilar") << "\n";
    }
    return yes ? 0 : 1;
}

int cmd_abisim(const Options& o) {
    elp::PointedAction a = load_action(o.file_a);
    elp::PointedAction b = load_action(o.file_b);
    elp::Oracle oracle = make_oracle(a.model.uni);
    bool yes = elp::agent_bisimilar(a, b, o.agent, oracle);
    if (o.as_json) {
        json j;
        j["agent"] = o.agent;
        j["bisimilar"] = yes;
        std::cout << elp::dump_canonical(j);
    } else {
        std::cout << (yes ? "bisimilar" : "not bisimilar") << "\n";
    }
    return yes ? 0 : 1;
}

int cmd_synthesize(const Options& o) {
    elp::PointedAction na = load_action(o.file_a);
    elp::Oracle oracle = make_oracle(na.model.uni);
    elp::TermPtr t;
    if (o.mode == "s5")
        t = elp::synthesize_s5(na, oracle);
    else if (o.mode == "tree")
        t = elp::synthesize_tree(na, oracle);
    else if (o.mode == "general")
        t = elp::synthesize(na, oracle);
    else if (o.mode == "auto")
        t = elp::synthesize(na, oracle);
    else
        throw elp::ElpError("unknown mode: " + o.mode);
    bool verified = true;
    if (o.verify) {
        elp::PointedAction back = elp::compile_program(t, oracle).action;
        verified = elp::bisimilar(back, na, oracle);
    }
    if (o.as_json) {
        json j;
        j["program"] = elp::print_term(t);
        if (o.verify) j["verified"] = verified;
        std::cout << elp::dump_canonical(j);
    } else {
        std::cout << elp::print_term(t) << "\n";
        if (o.verify && !verified)
            std::cerr << "round-trip verification failed\n";
    }
    return verified ? 0 : 1;
}

int cmd_classify(const Options& o) {
    if (!o.program.empty()) {
        elp::Universe uni = o.universe();
        elp::Oracle oracle = make_oracle(uni);
        elp::TermPtr t = elp::parse_term(o.program, uni);
        int dm = elp::classify_program(t);
        elp::PointedAction na = elp::compile_program(t, oracle).action;
        json j = classify_json(na, oracle, dm);
        if (o.as_json)
            std::cout << elp::dump_canonical(j);
        else
            std::cout << "dependent_mu=" << dm << " depth=" << j["depth"]
                      << " premise_distinct_pre="
                      << (j["premise_distinct_pre"].get<bool>() ? "yes"
                                                                : "no")
                      << "\n";
        return 0;
    }
    elp::PointedAction na = load_action(o.file_a);
    elp::Oracle oracle = make_oracle(na.model.uni);
    json j = classify_json(na, oracle, std::nullopt);
    if (o.as_json)
        std::cout << elp::dump_canonical(j);
    else
        std::cout << "depth=" << j["depth"] << " premise_distinct_pre="
                  << (j["premise_distinct_pre"].get<bool>() ? "yes" : "no")
                  << "\n";
    return 0;
}

int cmd_witness(const Options& o) {
    elp::Universe uni = o.universe();
    elp::Oracle oracle = make_oracle(uni);
    elp::TermPtr t = elp::witness(o.k, uni);
    if (o.as_json) {
        elp::PointedAction na = elp::compile_program(t, oracle).action;
        json j = classify_json(na, oracle, elp::classify_program(t));
        j["program"] = elp::print_term(t);
        std::cout << elp::dump_canonical(j);
    } else {
        std::cout << elp::print_term(t) << "\n";
    }
    return 0;
}

int cmd_check(const Options& o) {
    if (!o.program.empty()) {
        elp::Universe uni = o.universe();
        elp::Oracle oracle = make_oracle(uni);
        elp::TermPtr t = elp::parse_term(o.program, uni);
        elp::well_formed(t, oracle);  // throws IllFormed on violation
        bool closed = elp::free_vars(t).empty();
        if (o.as_json) {
            json j;
            j["well_formed"] = true;
            j["closed"] = closed;
            std::cout << elp::dump_canonical(j);
        } else {
            std::cout << "well-formed"
                      << (closed ? "" : " (open: free variables remain)")
                      << "\n";
        }
        return 0;
    }
    json raw = elp::load_json(o.file_a);
    elp::FrameReport rep;
    if (elp::is_action_json(raw))
        rep = elp::frame_class(elp::action_from_json(raw).model);
    else
        rep = elp::frame_class(elp::kripke_from_json(raw).model);
    if (o.as_json) {
        json j;
        j["is_K45"] = rep.is_K45;
        j["is_KD45"] = rep.is_KD45;
        j["is_S5"] = rep.is_S5;
        json per = json::object();
        for (const auto& [a, fl] : rep.per_agent)
            per[a] = {{"reflexive", fl.reflexive},
                      {"serial", fl.serial},
                      {"transitive", fl.transitive},
                      {"euclidean", fl.euclidean}};
        j["per_agent"] = per;
        std::cout << elp::dump_canonical(j);
    } else {
        std::cout << "K45=" << (rep.is_K45 ? "yes" : "no")
                  << " KD45=" << (rep.is_KD45 ? "yes" : "no")
                  << " S5=" << (rep.is_S5 ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_mc(const Options& o) {
    elp::KripkeState ms = elp::kripke_from_json(elp::load_json(o.file_a));
    elp::FormulaPtr f = elp::parse_formula(o.text, ms.model.uni);
    bool app = elp::is_applicable(ms, f);
    std::optional<bool> value;
    if (app) value = elp::satisfies(ms, f);
    if (o.as_json) {
        json j;
        j["applicable"] = app;
        j["value"] = value ? json(*value) : json(nullptr);
        std::cout << elp::dump_canonical(j);
    } else if (!app) {
        std::cout << "not applicable\n";
    } else {
        std::cout << (*value ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_prove(const Options& o) {
    elp::Universe uni = o.universe();
    elp::FormulaPtr f = elp::parse_formula(o.text, uni);
    if (o.sat) {
        auto w = elp::kd45_witness(f, uni);
        if (o.as_json) {
            json j;
            j["satisfiable"] = w.has_value();
            j["witness"] = w ? elp::to_json(*w) : json(nullptr);
            std::cout << elp::dump_canonical(j);
        } else {
            std::cout << (w ? "satisfiable" : "unsatisfiable") << "\n";
            if (w) std::cout << elp::dump_canonical(elp::to_json(*w));
        }
        return 0;
    }
    auto counter = elp::kd45_witness(elp::f_not(f), uni);
    bool valid = !counter.has_value();
    if (o.as_json) {
        json j;
        j["valid"] = valid;
        j["countermodel"] =
            counter ? elp::to_json(*counter) : json(nullptr);
        std::cout << elp::dump_canonical(j);
    } else {
        std::cout << (valid ? "valid" : "invalid") << "\n";
        if (counter) std::cout << elp::dump_canonical(elp::to_json(*counter));
    }
    return 0;
}

int cmd_export_dot(const Options& o) {
    json raw = elp::load_json(o.file_a);
    std::string dot = elp::is_action_json(raw)
                          ? elp::to_dot(elp::action_from_json(raw))
                          : elp::to_dot(elp::kripke_from_json(raw));
    write_out(dot, o.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epistemic learning-program calculus"};
    app.require_subcommand(1);
    Options o;

    auto add_universe = [&](CLI::App* c) {
        c->add_option("--agents", o.agents, "agent universe, comma-separated");
        c->add_option("--atoms", o.atoms, "atom universe, comma-separated");
    };
    auto add_json = [&](CLI::App* c) {
        c->add_flag("--json", o.as_json, "machine-readable output");
    };

    CLI::App* parse = app.add_subcommand("parse", "parse a program or formula");
    parse->add_option("text", o.text)->required();
    parse->add_flag("--formula", o.force_formula, "use the formula grammar");
    add_universe(parse);
    add_json(parse);

    CLI::App* compile =
        app.add_subcommand("compile", "compile a program to an action model");
    compile->add_option("text", o.text)->required();
    compile->add_option("--output,-o", o.output, "write JSON here");
    compile->add_option("--dot", o.dot_file, "also write a DOT rendering");
    add_universe(compile);
    add_json(compile);

    CLI::App* update =
        app.add_subcommand("update", "execute an action on an epistemic state");
    update->add_option("state", o.file_a)->required();
    update->add_option("--program", o.program, "program text to compile");
    update->add_option("--action", o.file_b, "action model JSON");
    update->add_option("--output,-o", o.output);
    add_json(update);

    CLI::App* bisim = app.add_subcommand("bisim", "action-model bisimilarity");
    bisim->add_option("a", o.file_a)->required();
    bisim->add_option("b", o.file_b)->required();
    add_json(bisim);

    CLI::App* abisim =
        app.add_subcommand("abisim", "agent-restricted bisimilarity");
    abisim->add_option("agent", o.agent)->required();
    abisim->add_option("a", o.file_a)->required();
    abisim->add_option("b", o.file_b)->required();
    add_json(abisim);

    CLI::App* synth =
        app.add_subcommand("synthesize", "extract a program from a model");
    synth->add_option("model", o.file_a)->required();
    synth->add_option("--mode", o.mode, "auto|s5|tree|general");
    synth->add_flag("--verify", o.verify, "round-trip bisimilarity check");
    add_json(synth);

    CLI::App* classify =
        app.add_subcommand("classify", "kRLP hierarchy classification");
    classify->add_option("model", o.file_a);
    classify->add_option("--program", o.program, "classify a program instead");
    add_universe(classify);
    add_json(classify);

    CLI::App* wit =
        app.add_subcommand("witness", "hierarchy strictness witness program");
    wit->add_option("k", o.k)->required();
    add_universe(wit);
    add_json(wit);

    CLI::App* check =
        app.add_subcommand("check", "frame class / well-formedness report");
    check->add_option("model", o.file_a);
    check->add_option("--program", o.program, "check a program instead");
    add_universe(check);
    add_json(check);

    CLI::App* mc = app.add_subcommand("mc", "model-check a formula at a state");
    mc->add_option("state", o.file_a)->required();
    mc->add_option("formula", o.text)->required();
    add_json(mc);

    CLI::App* prove = app.add_subcommand("prove", "KD45 validity (or --sat)");
    prove->add_option("formula", o.text)->required();
    prove->add_flag("--sat", o.sat, "decide satisfiability instead");
    add_universe(prove);
    add_json(prove);

    CLI::App* xdot = app.add_subcommand("export-dot", "render a model as DOT");
    xdot->add_option("model", o.file_a)->required();
    xdot->add_option("--output,-o", o.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (parse->parsed()) return cmd_parse(o);
        if (compile->parsed()) return cmd_compile(o);
        if (update->parsed()) return cmd_update(o);
        if (bisim->parsed()) return cmd_bisim(o);
        if (abisim->parsed()) return cmd_abisim(o);
        if (synth->parsed()) return cmd_synthesize(o);
        if (classify->parsed()) return cmd_classify(o);
        if (wit->parsed()) return cmd_witness(o);
        if (check->parsed()) return cmd_check(o);
        if (mc->parsed()) return cmd_mc(o);
        if (prove->parsed()) return cmd_prove(o);
        if (xdot->parsed()) return cmd_export_dot(o);
    } catch (const elp::ElpError& e) {
        std::cerr << error_name(e) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
