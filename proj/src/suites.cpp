#include "distlam/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "json.hpp"

#include "distlam/parse.hpp"
#include "distlam/pretty.hpp"
#include "distlam/rewrite.hpp"
#include "distlam/types.hpp"

namespace distlam {

namespace {

struct Runner {
    SuiteReport report;

    void pass() {
        report.attempted++;
        report.passed++;
    }
    void vac() {
        report.attempted++;
        report.vacuous++;
    }
    void fail(std::uint64_t seed, std::string input, std::string details) {
        report.attempted++;
        report.counterexamples.push_back(
            {seed, std::move(input), std::move(details)});
    }
    void note(const std::string& key) { report.notes[key]++; }
};

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return n ? static_cast<std::size_t>(rng() % n) : 0;
}

TermPtr random_walk(TermPtr t, std::mt19937_64& rng, std::size_t max_steps,
                    RuleSet rules) {
    std::size_t steps = pick(rng, max_steps + 1);
    for (std::size_t i = 0; i < steps; ++i) {
        auto all = reducts(t, rules);
        if (all.empty()) break;
        t = all[pick(rng, all.size())].target;
    }
    return t;
}

// Alpha-classes reachable within k steps.
std::unordered_set<std::string> reachable_within(const TermPtr& t,
                                                 std::size_t k, RuleSet rules) {
    std::unordered_set<std::string> seen{term_key(t)};
    std::vector<TermPtr> frontier{t};
    for (std::size_t d = 0; d < k && !frontier.empty(); ++d) {
        std::vector<TermPtr> next;
        for (const TermPtr& u : frontier) {
            for (const Step& s : reducts(u, rules)) {
                if (seen.insert(term_key(s.target)).second) {
                    next.push_back(s.target);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

bool joinable_within(const TermPtr& a, const TermPtr& b, std::size_t k,
                     RuleSet rules) {
    auto ra = reachable_within(a, k, rules);
    auto rb = reachable_within(b, k, rules);
    for (const std::string& key : ra) {
        if (rb.count(key)) return true;
    }
    return false;
}

// Pinned small corpus for the untyped suites.
std::vector<TermPtr> untyped_corpus() {
    return enumerate_terms(5, {"x", "y"}, {nullptr});
}

// ---------------------------------------------------------------------------
// confluence
// ---------------------------------------------------------------------------

void graph_sink_check(Runner& r, const TermPtr& t, std::uint64_t seed,
                      std::size_t node_cap, bool generated) {
    ReductionGraph g = build_graph(t, RuleSet::Core, node_cap);
    if (!g.frontier_exhausted || g.has_cycle()) {
        r.vac();
        return;
    }
    auto sinks = g.normal_nodes(RuleSet::Core);
    if (sinks.size() == 1) {
        r.note("graphs_unique_sink");
        if (generated) r.note("generated_graphs_unique_sink");
        r.pass();
    } else {
        r.fail(seed, pretty(t),
               "expected exactly one normal-form sink, found " +
                   std::to_string(sinks.size()));
    }
}

void run_confluence(Runner& r, const GenConfig& cfg, std::size_t trials,
                    std::size_t fuel, std::size_t node_cap) {
    for (const TermPtr& t : untyped_corpus()) {
        graph_sink_check(r, t, 0, node_cap, false);
    }
    for (std::size_t i = 0; i < trials; ++i) {
        GenConfig c = cfg;
        c.seed = derive_seed(cfg.seed, i);
        graph_sink_check(r, gen_term(c), c.seed, node_cap, true);
    }
    // Peaks: s1 <<- t ->> s2, then both normalized with the `first`
    // strategy; whenever both normalize the normal forms must agree.
    for (std::size_t i = 0; i < trials; ++i) {
        std::uint64_t seed = derive_seed(cfg.seed, trials + i);
        GenConfig c = cfg;
        c.seed = seed;
        TermPtr t = gen_term(c);
        std::mt19937_64 rng(derive_seed(seed, 1));
        TermPtr s1 = random_walk(t, rng, 5, RuleSet::Core);
        TermPtr s2 = random_walk(t, rng, 5, RuleSet::Core);
        Outcome o1 = reduce(s1, Strategy::First, fuel, RuleSet::Core);
        Outcome o2 = reduce(s2, Strategy::First, fuel, RuleSet::Core);
        if (o1.status != Outcome::Status::NormalForm ||
            o2.status != Outcome::Status::NormalForm) {
            r.vac();
            continue;
        }
        if (alpha_eq(o1.term, o2.term)) {
            r.note("peaks_joined");
            r.pass();
        } else {
            r.fail(seed, pretty(t),
                   "peak normal forms differ: " + pretty(o1.term) + " vs " +
                       pretty(o2.term));
        }
    }
}

// ---------------------------------------------------------------------------
// progress
// ---------------------------------------------------------------------------

void run_progress(Runner& r, const GenConfig& cfg, std::size_t trials,
                  std::size_t fuel) {
    for (const TermPtr& t : enumerate_closed_terms(7)) {
        Verdict v = progress_check(t);
        if (v.holds()) {
            r.note("normal_forms_checked");
            r.pass();
        } else if (v.vacuous()) {
            r.vac();
        } else {
            r.fail(0, pretty(t), v.details);
        }
    }
    GenConfig closed_cfg = cfg;
    closed_cfg.closed = true;
    for (std::size_t i = 0; i < trials; ++i) {
        closed_cfg.seed = derive_seed(cfg.seed, i);
        TermPtr t = gen_term(closed_cfg);
        Outcome out = reduce(t, Strategy::Lo, fuel, RuleSet::Core);
        if (out.status != Outcome::Status::NormalForm) {
            r.vac();
            continue;
        }
        Verdict v = progress_check(out.term);
        if (v.holds()) {
            r.note("normalized_to_value");
            r.pass();
        } else {
            r.fail(closed_cfg.seed, pretty(t), v.details);
        }
    }
}

// ---------------------------------------------------------------------------
// lo-normalization
// ---------------------------------------------------------------------------

void lo_reaches_nf_check(Runner& r, const TermPtr& t, std::uint64_t seed,
                         std::size_t node_cap, bool generated) {
    ReductionGraph g = build_graph(t, RuleSet::Core, node_cap);
    if (!g.frontier_exhausted) {
        r.vac();
        return;
    }
    auto nfs = g.normal_nodes(RuleSet::Core);
    if (nfs.empty()) {
        r.vac();
        return;
    }
    Outcome out = reduce(t, Strategy::Lo, g.nodes.size(), RuleSet::Core);
    if (out.status != Outcome::Status::NormalForm) {
        r.fail(seed, pretty(t),
               "graph has a normal form but LO did not reach one");
        return;
    }
    for (std::size_t n : nfs) {
        if (alpha_eq(g.nodes[n], out.term)) {
            r.note("instances_with_nf");
            if (generated) r.note("generated_instances_with_nf");
            r.pass();
            return;
        }
    }
    r.fail(seed, pretty(t),
           "LO normal form " + pretty(out.term) + " is not a graph sink");
}

void run_lo_normalization(Runner& r, const GenConfig& cfg, std::size_t trials,
                          std::size_t node_cap) {
    for (const TermPtr& t : untyped_corpus()) {
        lo_reaches_nf_check(r, t, 0, node_cap, false);
    }
    for (std::size_t i = 0; i < trials; ++i) {
        GenConfig c = cfg;
        c.seed = derive_seed(cfg.seed, i);
        lo_reaches_nf_check(r, gen_term(c), c.seed, node_cap, true);
    }
}

// ---------------------------------------------------------------------------
// substitutivity
// ---------------------------------------------------------------------------

void run_substitutivity(Runner& r, const GenConfig& cfg, std::size_t trials) {
    for (std::size_t i = 0; i < trials; ++i) {
        std::uint64_t seed = derive_seed(cfg.seed, i);
        std::mt19937_64 rng(derive_seed(seed, 1));

        TermPtr t;
        std::vector<Step> t_steps;
        for (int attempt = 0; attempt < 8; ++attempt) {
            GenConfig c = cfg;
            c.seed = derive_seed(seed, 10 + attempt);
            t = gen_term(c);
            t_steps = reducts(t, RuleSet::Core);
            if (!t_steps.empty()) break;
        }
        GenConfig sc = cfg;
        sc.max_size = std::min<std::size_t>(cfg.max_size, 6);
        sc.seed = derive_seed(seed, 2);
        TermPtr s = gen_term(sc);

        std::set<Name> fv = free_vars(t);
        Name x = "x0";
        if (!fv.empty()) {
            auto it = fv.begin();
            std::advance(it, pick(rng, fv.size()));
            x = *it;
        }

        // Left: t -> t' gives t[s/x] -> t'[s/x] by the same rule at the
        // same position, in exactly one step.
        if (t_steps.empty()) {
            r.vac();
        } else {
            const Step& step = t_steps[pick(rng, t_steps.size())];
            TermPtr t_sub = subst(t, x, s);
            TermPtr expected = subst(step.target, x, s);
            bool found = false;
            for (const Step& cand : reducts(t_sub, RuleSet::Core)) {
                if (cand.label == step.label && cand.position == step.position &&
                    alpha_eq(cand.target, expected)) {
                    found = true;
                    break;
                }
            }
            if (found) {
                r.note("left_checked");
                r.pass();
            } else {
                r.fail(seed, pretty(t),
                       "left substitutivity: step " + format_step(step) +
                           " not mirrored in " + pretty(t_sub));
            }
        }

        // Right: s -> s' gives t[s/x] ->* t[s'/x], one step per occurrence
        // of x, replacing occurrences left to right.
        std::vector<Step> s_steps = reducts(s, RuleSet::Core);
        for (int attempt = 0; s_steps.empty() && attempt < 8; ++attempt) {
            sc.seed = derive_seed(seed, 20 + attempt);
            s = gen_term(sc);
            s_steps = reducts(s, RuleSet::Core);
        }
        if (s_steps.empty()) {
            r.vac();
            continue;
        }
        const Step& s_step = s_steps[pick(rng, s_steps.size())];
        TermPtr s2 = s_step.target;
        std::vector<Position> occs = occurrence_positions(t, x);
        TermPtr cur = subst(t, x, s);
        bool ok = true;
        for (const Position& pos : occs) {
            TermPtr next = replace_at(cur, pos, s2);
            bool found = false;
            for (const Step& cand : reducts(cur, RuleSet::Core)) {
                if (alpha_eq(cand.target, next)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                r.fail(seed, pretty(t),
                       "right substitutivity: no step from " + pretty(cur) +
                           " to " + pretty(next));
                ok = false;
                break;
            }
            cur = next;
        }
        if (!ok) continue;
        if (!alpha_eq(cur, subst(t, x, s2))) {
            r.fail(seed, pretty(t),
                   "right substitutivity: path does not end at t[s'/x]");
            continue;
        }
        r.note("right_checked");
        if (!occs.empty()) r.note("right_with_occurrences");
        r.pass();
    }
}

// ---------------------------------------------------------------------------
// subject-reduction
// ---------------------------------------------------------------------------

struct TypedFixture {
    const char* ctx;
    const char* term;
};

// One fixture per top-level rule, as in the preservation argument.
constexpr TypedFixture kSubjectReductionFixtures[] = {
    {"y:A", "(\\x:A. <x, x>) y"},            // beta
    {"y:A, z:B", "p1 <y, z>"},               // projection
    {"y:A", "<\\x:A. x, \\x:A. x> y"},       // pair applied to an argument
    {"", "p1 (\\x:A. <x, x>)"},              // projection of an abstraction
};

void run_subject_reduction(Runner& r, const GenConfig& cfg,
                           std::size_t trials) {
    for (const TypedFixture& f : kSubjectReductionFixtures) {
        TypingContext ctx = parse_context(f.ctx).ctx;
        TermPtr t = parse_term(f.term);
        Verdict v = subject_reduction_check(ctx, t);
        if (v.holds()) {
            r.note("fixtures_passed");
            r.pass();
        } else {
            r.fail(0, f.term, v.vacuous() ? "fixture has no reducts" : v.details);
        }
    }
    for (std::size_t i = 0; i < trials; ++i) {
        GenConfig c = cfg;
        c.seed = derive_seed(cfg.seed, i);
        try {
            auto [ctx, t] = gen_typed_term(c);
            Verdict v = subject_reduction_check(ctx, t);
            if (v.holds()) r.pass();
            else if (v.vacuous()) r.vac();
            else r.fail(c.seed, pretty(t), v.details);
        } catch (const std::exception& e) {
            r.fail(c.seed, "", std::string("unexpected error: ") + e.what());
        }
    }
}

// ---------------------------------------------------------------------------
// strong-normalization
// ---------------------------------------------------------------------------

void run_strong_normalization(Runner& r, const GenConfig& cfg,
                              std::size_t trials, std::size_t fuel,
                              std::size_t node_cap) {
    // The untyped diverging fixture: omega reduces to itself in one step.
    TermPtr omega = parse_term("(\\x. x x) (\\x. x x)");
    Outcome out = reduce(omega, Strategy::Lo, fuel, RuleSet::Core);
    if (out.status == Outcome::Status::CycleDetected && out.trace.size() == 1) {
        r.note("omega_cycle_detected");
        r.pass();
    } else {
        r.fail(0, pretty(omega), "expected a 1-step cycle");
    }

    for (std::size_t i = 0; i < trials; ++i) {
        GenConfig c = cfg;
        c.seed = derive_seed(cfg.seed, i);
        try {
            auto [ctx, t] = gen_typed_term(c);
            (void)ctx;
            ReductionGraph g = build_graph(t, RuleSet::Core, node_cap);
            if (!g.frontier_exhausted) {
                r.fail(c.seed, pretty(t), "reduction graph exceeded node cap");
            } else if (g.has_cycle()) {
                r.fail(c.seed, pretty(t), "reduction graph has a cycle");
            } else {
                r.note("graphs_exhausted_acyclic");
                r.pass();
            }
        } catch (const std::exception& e) {
            r.fail(c.seed, "", std::string("unexpected error: ") + e.what());
        }
    }
}

// ---------------------------------------------------------------------------
// typed-substitution
// ---------------------------------------------------------------------------

void run_typed_substitution(Runner& r, const GenConfig& cfg,
                            std::size_t trials) {
    for (std::size_t i = 0; i < trials; ++i) {
        GenConfig c = cfg;
        c.seed = derive_seed(cfg.seed, i);
        try {
            auto [ctx, t] = gen_typed_term(c);
            std::mt19937_64 rng(derive_seed(c.seed, 1));
            // Remove one of the free-form bindings; the per-atom variables
            // stay so every goal remains derivable.
            std::vector<std::size_t> removable;
            const auto& bindings = ctx.bindings();
            for (std::size_t k = 0; k < bindings.size(); ++k) {
                if (bindings[k].first[0] == 'w') removable.push_back(k);
            }
            if (removable.empty()) {
                r.vac();
                continue;
            }
            std::size_t chosen = removable[pick(rng, removable.size())];
            Name x = bindings[chosen].first;
            TypePtr a = bindings[chosen].second;
            TypingContext ctx0;
            for (std::size_t k = 0; k < bindings.size(); ++k) {
                if (k != chosen) ctx0.push(bindings[k].first, bindings[k].second);
            }
            TermPtr s = gen_term_of_type(ctx0, a, derive_seed(c.seed, 2), 8);
            if (!s) {
                r.vac();
                continue;
            }
            Verdict v = typed_subst_check(ctx0, x, a, t, s);
            if (v.holds()) {
                if (occurrences(t, x) > 0) r.note("with_occurrences");
                r.pass();
            } else if (v.vacuous()) {
                r.vac();
            } else {
                r.fail(c.seed, pretty(t), v.details);
            }
        } catch (const std::exception& e) {
            r.fail(c.seed, "", std::string("unexpected error: ") + e.what());
        }
    }
}

// ---------------------------------------------------------------------------
// iso-oracle
// ---------------------------------------------------------------------------

void iso_agreement_check(Runner& r, const TypePtr& a, const TypePtr& b,
                         std::uint64_t seed) {
    std::size_t depth = distrib_steps_to_nf(a) + distrib_steps_to_nf(b);
    bool by_nf = types_iso(a, b);
    bool by_search = iso_proof_search(a, b, depth);
    if (by_nf == by_search) {
        r.pass();
    } else {
        r.fail(seed, pretty_type(a) + "  vs  " + pretty_type(b),
               std::string("types_iso says ") + (by_nf ? "yes" : "no") +
                   ", bounded search says " + (by_search ? "yes" : "no"));
    }
}

void run_iso_oracle(Runner& r, const GenConfig& cfg, std::size_t trials) {
    auto corpus = enumerate_types(6, 2);
    for (const TypePtr& a : corpus) {
        for (const TypePtr& b : corpus) {
            r.note("exhaustive_pairs");
            iso_agreement_check(r, a, b, 0);
        }
    }
    for (std::size_t i = 0; i < trials; ++i) {
        std::uint64_t seed = derive_seed(cfg.seed, i);
        std::mt19937_64 rng(seed);
        GenConfig c = cfg;
        c.seed = derive_seed(seed, 1);
        TypePtr a = gen_type(c, 6);
        TypePtr b;
        if (pick(rng, 2) == 0) {
            // A deliberate isomorph, by random rewrites in both directions.
            b = a;
            std::size_t steps = 1 + pick(rng, 3);
            for (std::size_t k = 0; k < steps; ++k) {
                auto ns = iso_neighbors(b);
                if (ns.empty()) break;
                b = ns[pick(rng, ns.size())];
            }
            if (!types_iso(a, b)) {
                r.fail(seed, pretty_type(a) + "  vs  " + pretty_type(b),
                       "rewritten variant not isomorphic to the original");
                continue;
            }
        } else {
            c.seed = derive_seed(seed, 2);
            b = gen_type(c, 6);
        }
        iso_agreement_check(r, a, b, seed);
    }
}

// ---------------------------------------------------------------------------
// critical-pairs
// ---------------------------------------------------------------------------

void run_critical_pairs(Runner& r) {
    TermPtr a = var("a"), b = var("b"), c = var("c");
    struct Diagram {
        const char* name;
        TermPtr peak;
        TermPtr first;   // reduct at the root
        TermPtr second;  // reduct at the inner overlap
        std::size_t bound;
    };
    const Diagram diagrams[] = {
        {"proj-abs / abs-pair", proj(1, abs("x", pair(a, b))),
         abs("x", proj(1, pair(a, b))), proj(1, pair(abs("x", a), abs("x", b))),
         2},
        {"proj-app / pair-app", proj(1, app(pair(a, b), c)),
         app(proj(1, pair(a, b)), c), proj(1, pair(app(a, c), app(b, c))), 2},
        {"beta / abs-pair", app(abs("x", pair(a, b)), c), pair(a, b),
         app(pair(abs("x", a), abs("x", b)), c), 6},
        {"proj-app / beta", proj(1, app(abs("x", a), c)),
         app(proj(1, abs("x", a)), c), proj(1, a), 6},
    };
    for (const Diagram& d : diagrams) {
        auto steps = reducts(d.peak, RuleSet::Extended);
        if (steps.size() != 2 || !alpha_eq(steps[0].target, d.first) ||
            !alpha_eq(steps[1].target, d.second)) {
            r.fail(0, pretty(d.peak),
                   std::string(d.name) + ": peak reducts do not match the diagram");
            continue;
        }
        if (joinable_within(steps[0].target, steps[1].target, d.bound,
                            RuleSet::Extended)) {
            r.note("diagrams_closed");
            r.pass();
        } else {
            r.fail(0, pretty(d.peak),
                   std::string(d.name) + ": reducts do not rejoin within " +
                       std::to_string(d.bound) + " steps");
        }
    }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "confluence",          "progress",
        "lo-normalization",    "substitutivity",
        "subject-reduction",   "strong-normalization",
        "typed-substitution",  "iso-oracle",
        "critical-pairs",
    };
    return names;
}

SuiteReport run_suite(const std::string& name, const GenConfig& cfg,
                      std::size_t trials, std::size_t fuel,
                      std::size_t node_cap) {
    Runner r;
    r.report.suite = name;
    auto start = std::chrono::steady_clock::now();
    if (name == "confluence") {
        run_confluence(r, cfg, trials, fuel, node_cap);
    } else if (name == "progress") {
        run_progress(r, cfg, trials, fuel);
    } else if (name == "lo-normalization") {
        run_lo_normalization(r, cfg, trials, node_cap);
    } else if (name == "substitutivity") {
        run_substitutivity(r, cfg, trials);
    } else if (name == "subject-reduction") {
        run_subject_reduction(r, cfg, trials);
    } else if (name == "strong-normalization") {
        run_strong_normalization(r, cfg, trials, fuel, node_cap);
    } else if (name == "typed-substitution") {
        run_typed_substitution(r, cfg, trials);
    } else if (name == "iso-oracle") {
        run_iso_oracle(r, cfg, trials);
    } else if (name == "critical-pairs") {
        run_critical_pairs(r);
    } else {
        throw std::invalid_argument("unknown suite: " + name);
    }
    auto& cex = r.report.counterexamples;
    std::sort(cex.begin(), cex.end(), [](const auto& p, const auto& q) {
        return std::tie(p.seed, p.input, p.details) <
               std::tie(q.seed, q.input, q.details);
    });
    r.report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return r.report;
}

std::string report_text(const SuiteReport& report) {
    std::string out;
    out += "suite: " + report.suite + "\n";
    out += "attempted: " + std::to_string(report.attempted) + "\n";
    out += "passed: " + std::to_string(report.passed) + "\n";
    out += "vacuous: " + std::to_string(report.vacuous) + "\n";
    out += "counterexamples: " + std::to_string(report.counterexamples.size()) +
           "\n";
    for (std::size_t i = 0; i < report.counterexamples.size(); ++i) {
        const auto& c = report.counterexamples[i];
        out += "cex[" + std::to_string(i) + "]: seed=" + std::to_string(c.seed) +
               " input=" + c.input + " details=" + c.details + "\n";
    }
    for (const auto& [key, value] : report.notes) {
        out += "note " + key + ": " + std::to_string(value) + "\n";
    }
    return out;
}

namespace {

nlohmann::json report_to_json(const SuiteReport& report) {
    nlohmann::json j;
    j["suite"] = report.suite;
    j["attempted"] = report.attempted;
    j["passed"] = report.passed;
    j["vacuous"] = report.vacuous;
    j["counterexamples"] = nlohmann::json::array();
    for (const auto& c : report.counterexamples) {
        j["counterexamples"].push_back(
            {{"seed", c.seed}, {"input", c.input}, {"details", c.details}});
    }
    j["notes"] = nlohmann::json::object();
    for (const auto& [key, value] : report.notes) j["notes"][key] = value;
    j["wall_seconds"] = report.wall_seconds;
    return j;
}

}  // namespace

std::string report_json(const SuiteReport& report) {
    return report_to_json(report).dump(2);
}

std::string reports_json(const std::vector<SuiteReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2);
}

}  // namespace distlam
