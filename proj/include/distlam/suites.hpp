#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "distlam/generate.hpp"

// Each metatheorem of the calculus is wired to a runnable suite:
//
//   confluence            unique normal-form sink per exhausted acyclic
//                         graph, plus random peak-join trials
//   progress              closed normal forms are values
//   lo-normalization      leftmost-outermost reaches the normal form
//                         whenever the reduction graph contains one
//   substitutivity        one-step reduction commutes with substitution
//   subject-reduction     reducts of well-typed terms keep their type
//   strong-normalization  well-typed terms have finite acyclic graphs
//   typed-substitution    the typed substitution lemma
//   iso-oracle            types_iso agrees with bounded equational search
//   critical-pairs        the four extended-mode overlaps all close
//
// Suites run `trials` generated inputs plus a pinned exhaustive small-term
// corpus, and report deterministically for a fixed config.

namespace distlam {

struct SuiteReport {
    struct Counterexample {
        std::uint64_t seed = 0;   // reproduction seed (0 for pinned corpus)
        std::string input;        // concrete syntax
        std::string details;
    };

    std::string suite;
    std::size_t attempted = 0;
    std::size_t passed = 0;
    std::size_t vacuous = 0;
    std::vector<Counterexample> counterexamples;  // sorted by seed
    std::map<std::string, std::size_t> notes;     // per-suite counters
    double wall_seconds = 0.0;

    bool ok() const { return counterexamples.empty(); }
};

const std::vector<std::string>& suite_names();

// Runs the named suite. Throws std::invalid_argument for an unknown name;
// property violations are reported, never thrown.
SuiteReport run_suite(const std::string& name, const GenConfig& cfg,
                      std::size_t trials = 1000, std::size_t fuel = 200,
                      std::size_t node_cap = 20000);

// Line-oriented rendering; excludes wall time so output is reproducible.
std::string report_text(const SuiteReport& report);

// JSON object (includes wall_seconds).
std::string report_json(const SuiteReport& report);
std::string reports_json(const std::vector<SuiteReport>& reports);

}  // namespace distlam
