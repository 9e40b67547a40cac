#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"

#include "distlam/generate.hpp"
#include "distlam/parse.hpp"
#include "distlam/pretty.hpp"
#include "distlam/rewrite.hpp"
#include "distlam/suites.hpp"
#include "distlam/types.hpp"

namespace {

using namespace distlam;

// Exit codes: 0 success/affirmative, 1 parse or usage error, 2 fuel
// exhausted, 3 cycle detected, 4 type error or negative judgment, 5 suite
// counterexample.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFuel = 2;
constexpr int kExitCycle = 3;
constexpr int kExitType = 4;
constexpr int kExitSuite = 5;

bool use_color() {
    if (const char* env = std::getenv("DISTLAM_COLOR")) {
        if (std::string(env) == "0") return false;
    }
    return isatty(STDOUT_FILENO);
}

std::string paint(const std::string& text, const char* code) {
    if (!use_color()) return text;
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

// Term/type arguments are quoted strings; "@path" reads the file instead.
std::string read_arg(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw std::runtime_error("cannot read file: " + arg.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
        text.pop_back();
    }
    return text;
}

std::uint64_t parse_seed(const std::string& seed) {
    if (seed == "now") {
        return static_cast<std::uint64_t>(
            std::chrono::steady_clock::now().time_since_epoch().count());
    }
    return std::stoull(seed);
}

RuleSet parse_rules(const std::string& rules) {
    if (rules == "core") return RuleSet::Core;
    if (rules == "extended") return RuleSet::Extended;
    throw CLI::ValidationError("--rules must be 'core' or 'extended'");
}

// ---------------------------------------------------------------------------
// parse: echo the AST
// ---------------------------------------------------------------------------

void echo_ast(const TermPtr& t, std::vector<Name>& binders, std::string& out) {
    if (const auto* v = as_bvar(t)) {
        int i = static_cast<int>(binders.size()) - 1 - v->index;
        out += "var(";
        out += i >= 0 ? binders[static_cast<std::size_t>(i)]
                      : "?" + std::to_string(v->index);
        out += ")";
        return;
    }
    if (const auto* v = as_fvar(t)) {
        out += "var(" + v->name + ")";
        return;
    }
    if (const auto* a = as_abs(t)) {
        std::set<Name> avoid = free_vars(a->body);
        avoid.insert(binders.begin(), binders.end());
        Name x = fresh_name(a->hint, avoid);
        out += "abs(" + x;
        if (a->annot) out += " : " + pretty_type(a->annot);
        out += ", ";
        binders.push_back(x);
        echo_ast(a->body, binders, out);
        binders.pop_back();
        out += ")";
        return;
    }
    if (const auto* ap = as_app(t)) {
        out += "app(";
        echo_ast(ap->fn, binders, out);
        out += ", ";
        echo_ast(ap->arg, binders, out);
        out += ")";
        return;
    }
    if (const auto* p = as_pair(t)) {
        out += "pair(";
        echo_ast(p->left, binders, out);
        out += ", ";
        echo_ast(p->right, binders, out);
        out += ")";
        return;
    }
    const auto* pr = as_proj(t);
    out += "proj" + std::to_string(pr->index) + "(";
    echo_ast(pr->body, binders, out);
    out += ")";
}

int cmd_parse(const std::string& term_text) {
    TermPtr t = parse_term(read_arg(term_text));
    std::string out;
    std::vector<Name> binders;
    echo_ast(t, binders, out);
    std::cout << out << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

int cmd_reduce(const std::string& term_text, const std::string& strategy,
               bool strategy_given, std::size_t fuel, const std::string& rules,
               bool trace, const std::string& seed) {
    RuleSet rule_set = parse_rules(rules);
    Strategy strat;
    if (strategy == "lo") strat = Strategy::Lo;
    else if (strategy == "first") strat = Strategy::First;
    else if (strategy == "rand") strat = Strategy::Random;
    else throw CLI::ValidationError("--strategy must be lo, first or rand");
    if (strat == Strategy::Lo && rule_set == RuleSet::Extended) {
        if (strategy_given) {
            throw CLI::ValidationError(
                "--strategy lo is defined for the core rules only");
        }
        strat = Strategy::First;  // extended default
    }

    TermPtr t = parse_term(read_arg(term_text));
    Outcome out = reduce(t, strat, fuel, rule_set, parse_seed(seed));
    if (trace) std::cout << format_trace(out.trace);
    std::cout << pretty(out.term) << "\n";
    switch (out.status) {
        case Outcome::Status::NormalForm:
            return kExitOk;
        case Outcome::Status::FuelExhausted:
            std::cerr << "fuel exhausted after " << out.trace.size()
                      << " steps\n";
            return kExitFuel;
        case Outcome::Status::CycleDetected:
            std::cerr << "cycle detected after " << out.trace.size()
                      << " steps\n";
            return kExitCycle;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// typecheck
// ---------------------------------------------------------------------------

int cmd_typecheck(const std::string& ctx_text, const std::string& term_text,
                  const std::string& expect_text) {
    ContextParse ctx = parse_context(read_arg(ctx_text));
    for (const std::string& w : ctx.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    TermPtr t = parse_term(read_arg(term_text));
    TypePtr inferred;
    try {
        inferred = infer(ctx.ctx, t);
    } catch (const TypeError& e) {
        std::cerr << "type error: " << e.what() << "\n";
        return kExitType;
    }
    std::cout << pretty_type(inferred) << "\n";
    if (!expect_text.empty()) {
        TypePtr expected = parse_type(read_arg(expect_text));
        if (!types_iso(expected, inferred)) {
            std::cerr << "type mismatch: expected " << pretty_type(expected)
                      << " (nf: " << pretty_type(type_nf(expected)) << ")\n";
            return kExitType;
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// iso
// ---------------------------------------------------------------------------

int cmd_iso(const std::string& left_text, const std::string& right_text) {
    TypePtr left = parse_type(read_arg(left_text));
    TypePtr right = parse_type(read_arg(right_text));
    std::cout << pretty_type(type_nf(left)) << "\n"
              << pretty_type(type_nf(right)) << "\n";
    bool iso = types_iso(left, right);
    std::cout << (iso ? "yes" : "no") << "\n";
    return iso ? kExitOk : kExitType;
}

// ---------------------------------------------------------------------------
// graph
// ---------------------------------------------------------------------------

int cmd_graph(const std::string& term_text, const std::string& rules,
              std::size_t max_nodes, const std::string& out_path) {
    RuleSet rule_set = parse_rules(rules);
    TermPtr t = parse_term(read_arg(term_text));
    ReductionGraph g = build_graph(t, rule_set, max_nodes);
    if (!g.frontier_exhausted) {
        std::cerr << "note: graph truncated at " << max_nodes << " nodes\n";
    }
    std::string dot = to_dot(g, rule_set);
    if (out_path.empty()) {
        std::cout << dot;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write file: " + out_path);
        out << dot;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int cmd_check(const std::string& suite, std::size_t trials,
              const std::string& seed, std::size_t size, std::size_t fuel,
              std::size_t max_nodes, const std::string& json_path) {
    GenConfig cfg;
    cfg.seed = parse_seed(seed);
    cfg.max_size = size;

    std::vector<std::string> to_run;
    if (suite == "all") {
        to_run = suite_names();
    } else {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end()) {
            throw CLI::ValidationError("unknown suite: " + suite);
        }
        to_run.push_back(suite);
    }

    std::vector<SuiteReport> reports;
    bool all_ok = true;
    for (const std::string& name : to_run) {
        SuiteReport report = run_suite(name, cfg, trials, fuel, max_nodes);
        std::cout << report_text(report) << "\n";
        all_ok = all_ok && report.ok();
        reports.push_back(std::move(report));
    }
    for (const SuiteReport& report : reports) {
        std::cout << (report.ok() ? paint("[PASS]", "32") : paint("[FAIL]", "31"))
                  << " " << report.suite << "\n";
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot write file: " + json_path);
        out << reports_json(reports) << "\n";
    }
    return all_ok ? kExitOk : kExitSuite;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distlam: an interpreter, type checker and metatheory "
                 "workbench for the distributive lambda-calculus"};
    app.require_subcommand(1);

    std::string term_text, ctx_text, expect_text, left_text, right_text;
    std::string strategy = "lo", rules = "core", seed = "42";
    std::string out_path, json_path, suite = "all";
    std::size_t fuel = 1000, max_nodes = 20000, trials = 1000, size = 12;
    bool trace = false;

    CLI::App* parse_cmd = app.add_subcommand("parse", "echo the parsed AST");
    parse_cmd->add_option("term", term_text, "term in concrete syntax")
        ->required();

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "reduce a term");
    reduce_cmd->add_option("term", term_text)->required();
    reduce_cmd->add_option("--strategy", strategy, "lo|first|rand");
    reduce_cmd->add_option("--fuel", fuel, "maximum number of steps");
    reduce_cmd->add_option("--rules", rules, "core|extended");
    reduce_cmd->add_flag("--trace", trace, "print one line per step");
    reduce_cmd->add_option("--seed", seed, "rand strategy seed, or 'now'");

    CLI::App* typecheck_cmd =
        app.add_subcommand("typecheck", "infer the type of an annotated term");
    typecheck_cmd->add_option("term", term_text)->required();
    typecheck_cmd->add_option("--ctx", ctx_text, "typing context, e.g. 'x:A, y:A -> B'");
    typecheck_cmd->add_option("--expect", expect_text,
                              "check the inferred type against this one");

    CLI::App* iso_cmd =
        app.add_subcommand("iso", "decide the distributivity isomorphism");
    iso_cmd->add_option("left", left_text)->required();
    iso_cmd->add_option("right", right_text)->required();

    CLI::App* graph_cmd =
        app.add_subcommand("graph", "export the reduction graph as DOT");
    graph_cmd->add_option("term", term_text)->required();
    graph_cmd->add_option("--rules", rules, "core|extended");
    graph_cmd->add_option("--max-nodes", max_nodes, "node cap");
    graph_cmd->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* check_cmd =
        app.add_subcommand("check", "run the metatheory suites");
    check_cmd->add_option("--suite", suite, "suite name or 'all'");
    check_cmd->add_option("--trials", trials, "generated inputs per suite");
    check_cmd->add_option("--seed", seed, "base seed, or 'now'");
    check_cmd->add_option("--size", size, "generator size budget");
    check_cmd->add_option("--fuel", fuel, "step budget where applicable");
    check_cmd->add_option("--max-nodes", max_nodes, "reduction graph node cap");
    check_cmd->add_option("--json", json_path, "also write a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (parse_cmd->parsed()) return cmd_parse(term_text);
        if (reduce_cmd->parsed()) {
            return cmd_reduce(term_text, strategy,
                              reduce_cmd->count("--strategy") > 0, fuel, rules,
                              trace, seed);
        }
        if (typecheck_cmd->parsed()) {
            return cmd_typecheck(ctx_text, term_text, expect_text);
        }
        if (iso_cmd->parsed()) return cmd_iso(left_text, right_text);
        if (graph_cmd->parsed()) {
            return cmd_graph(term_text, rules, max_nodes, out_path);
        }
        if (check_cmd->parsed()) {
            return cmd_check(suite, trials, seed, size, fuel, max_nodes,
                             json_path);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
