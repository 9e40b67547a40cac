// Acceptance suite: every metatheory property of the calculus checked at
// full scale, one pass/fail line each. All bounds (trial counts, sizes,
// fuel, node caps, time budgets) are fixed here, not tuned at run time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "distlam/generate.hpp"
#include "distlam/parse.hpp"
#include "distlam/pretty.hpp"
#include "distlam/rewrite.hpp"
#include "distlam/suites.hpp"
#include "distlam/types.hpp"

#include "oracles.hpp"

using namespace distlam;

namespace {

int failures = 0;

struct Criterion {
    std::string name;
    double time_budget_seconds;
    std::function<bool(std::string&)> check;
};

GenConfig base_config() {
    GenConfig cfg;
    cfg.seed = 42;
    cfg.max_size = 12;
    return cfg;
}

std::size_t note(const SuiteReport& r, const std::string& key) {
    auto it = r.notes.find(key);
    return it == r.notes.end() ? 0 : it->second;
}

std::string summarize(const SuiteReport& r) {
    std::string out = std::to_string(r.passed) + " passed, " +
                      std::to_string(r.vacuous) + " vacuous, " +
                      std::to_string(r.counterexamples.size()) + " failed";
    if (!r.counterexamples.empty()) {
        out += "; first: seed=" + std::to_string(r.counterexamples[0].seed) +
               " " + r.counterexamples[0].input + " -- " +
               r.counterexamples[0].details;
    }
    return out;
}

void run_criterion(const Criterion& c) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = c.check(detail);
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds >= c.time_budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ");
        detail += "exceeded time budget of " +
                  std::to_string(c.time_budget_seconds) + "s";
    }
    std::printf("[%s] %-22s %6.2fs  %s\n", ok ? "PASS" : "FAIL",
                c.name.c_str(), seconds, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

}  // namespace

int main() {
    const GenConfig cfg = base_config();

    const std::vector<Criterion> criteria = {
        {"progress", 10.0,
         [&](std::string& d) {
             SuiteReport r = run_suite("progress", cfg, 1000, 200, 20000);
             d = summarize(r) + "; closed normal forms of size <= 7: " +
                 std::to_string(note(r, "normal_forms_checked"));
             return r.ok() && note(r, "normal_forms_checked") > 0 &&
                    note(r, "normalized_to_value") > 0;
         }},

        {"confluence", 60.0,
         [&](std::string& d) {
             SuiteReport r = run_suite("confluence", cfg, 1000, 200, 20000);
             std::size_t graphs = note(r, "generated_graphs_unique_sink");
             std::size_t peaks = note(r, "peaks_joined");
             d = summarize(r) + "; generated unique-sink graphs: " +
                 std::to_string(graphs) + ", peaks joined: " +
                 std::to_string(peaks);
             return r.ok() && graphs >= 500 && peaks >= 900;
         }},

        {"lo-normalization", 60.0,
         [&](std::string& d) {
             SuiteReport r = run_suite("lo-normalization", cfg, 1000, 200, 20000);
             std::size_t instances = note(r, "generated_instances_with_nf");
             d = summarize(r) +
                 "; generated instances with a normal form: " +
                 std::to_string(instances);
             return r.ok() && instances >= 500;
         }},

        {"substitutivity", 10.0,
         [&](std::string& d) {
             SuiteReport r = run_suite("substitutivity", cfg, 1000, 200, 20000);
             std::size_t left = note(r, "left_checked");
             std::size_t right = note(r, "right_checked");
             d = summarize(r) + "; left: " + std::to_string(left) +
                 ", right: " + std::to_string(right);
             return r.ok() && left >= 900 && right >= 900;
         }},

        {"subject-reduction", 30.0,
         [&](std::string& d) {
             SuiteReport r = run_suite("subject-reduction", cfg, 1000, 200, 20000);
             d = summarize(r) + "; fixtures: " +
                 std::to_string(note(r, "fixtures_passed")) + "/4";
             return r.ok() && note(r, "fixtures_passed") == 4;
         }},

        {"strong-normalization", 120.0,
         [&](std::string& d) {
             SuiteReport r =
                 run_suite("strong-normalization", cfg, 1000, 200, 20000);
             d = summarize(r) + "; exhausted acyclic graphs: " +
                 std::to_string(note(r, "graphs_exhausted_acyclic")) +
                 "/1000, omega 1-step cycle: " +
                 std::to_string(note(r, "omega_cycle_detected"));
             return r.ok() && note(r, "graphs_exhausted_acyclic") == 1000 &&
                    note(r, "omega_cycle_detected") == 1;
         }},

        {"iso-decision", 30.0,
         [&](std::string& d) {
             SuiteReport r = run_suite("iso-oracle", cfg, 1000, 200, 20000);
             bool eq1 = types_iso(parse_type("A -> B & C"),
                                  parse_type("(A -> B) & (A -> C)"));
             bool comm = types_iso(parse_type("A & B"), parse_type("B & A"));
             bool assoc = types_iso(parse_type("(A & B) & C"),
                                    parse_type("A & (B & C)"));
             bool curry = types_iso(parse_type("(A & B) -> C"),
                                    parse_type("A -> B -> C"));
             d = summarize(r) + "; exhaustive pairs: " +
                 std::to_string(note(r, "exhaustive_pairs")) +
                 "; distributivity=yes, comm/assoc/curry=no: " +
                 (eq1 && !comm && !assoc && !curry ? "yes" : "NO");
             return r.ok() && note(r, "exhaustive_pairs") == 5476 && eq1 &&
                    !comm && !assoc && !curry;
         }},

        {"typing-uniqueness", 60.0,
         [&](std::string& d) {
             std::vector<TypePtr> annots = enumerate_types(3, 2);
             TypingContext gamma;
             gamma.push("x", atom("A"));
             std::size_t checked = 0, typable = 0, bad = 0;
             for (const TermPtr& t : enumerate_terms(5, {"x"}, annots)) {
                 ++checked;
                 auto found = oracle::derivable_types(gamma, t, 4);
                 TypePtr inferred;
                 bool infer_ok = true;
                 try {
                     inferred = infer(gamma, t);
                 } catch (const TypeError&) {
                     infer_ok = false;
                 }
                 if (infer_ok != !found.empty()) {
                     ++bad;
                     continue;
                 }
                 if (!infer_ok) continue;
                 ++typable;
                 for (const TypePtr& f : found) {
                     if (!types_iso(f, inferred)) ++bad;
                 }
             }
             d = std::to_string(checked) + " terms enumerated, " +
                 std::to_string(typable) + " typable, " + std::to_string(bad) +
                 " disagreements";
             return bad == 0 && typable > 1000;
         }},

        {"critical-pairs", 1.0,
         [&](std::string& d) {
             SuiteReport r = run_suite("critical-pairs", cfg, 1000, 200, 20000);
             d = summarize(r) + "; diagrams closed: " +
                 std::to_string(note(r, "diagrams_closed")) + "/4";
             return r.ok() && note(r, "diagrams_closed") == 4;
         }},

        {"substitution-lemma", 10.0,
         [&](std::string& d) {
             SuiteReport r = run_suite("typed-substitution", cfg, 500, 200, 20000);
             d = summarize(r);
             return r.ok() && r.passed >= 400;
         }},
    };

    for (const Criterion& c : criteria) run_criterion(c);

    if (failures == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
