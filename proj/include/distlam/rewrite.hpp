#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distlam/syntax.hpp"

// Operational semantics. Top-level rules:
//
//   core:      (\x. t) s   beta->   t[s/x]
//              pi <t1,t2>  pi_i->   t_i
//              <t, s> u    pair-app->  <t u, s u>
//              pi (\x. t)  proj-abs->  \x. pi t
//
//   extended:  \x. <t, s>  abs-pair->  <\x. t, \x. s>
//              pi (t s)    proj-app->  (pi t) s
//
// closed under arbitrary contexts. Reduction is untyped; annotations are
// carried along unchanged.

namespace distlam {

enum class StepLabel {
    Beta,
    Pi1,
    Pi2,
    PairApp,
    ProjAbs1,
    ProjAbs2,
    // extended mode only
    AbsPair,
    ProjApp1,
    ProjApp2,
};

enum class RuleSet { Core, Extended };

const char* label_name(StepLabel label);
bool is_extended_label(StepLabel label);

struct Step {
    StepLabel label;
    Position position;
    TermPtr source;  // whole term before the step
    TermPtr target;  // whole term after the step
};

// `<label> @ <dot-path> : <pretty source> --> <pretty target>`
std::string format_step(const Step& step);
std::string format_trace(const std::vector<Step>& trace);

// All top-level redex firings of t. Patterns are disjoint, so the result
// has at most one element; kept as a list to match the enumeration shape
// of the contextual closure.
std::vector<std::pair<StepLabel, TermPtr>> top_step(const TermPtr& t,
                                                    RuleSet rules);

// Contextual closure: every one-step reduct of t, positions in document
// order (outer before inner, left before right).
std::vector<Step> reducts(const TermPtr& t, RuleSet rules);

bool is_normal(const TermPtr& t, RuleSet rules);

// The unique leftmost-outermost step, or nullopt if t is normal. A top rule
// firing at a node always takes priority over descending into children.
// Defined for the core rules only; throws std::invalid_argument on Extended.
std::optional<Step> lo_step(const TermPtr& t, RuleSet rules = RuleSet::Core);

// ---------------------------------------------------------------------------
// Iterated reduction
// ---------------------------------------------------------------------------

enum class Strategy { Lo, First, Random };

struct Outcome {
    enum class Status { NormalForm, FuelExhausted, CycleDetected };
    Status status;
    TermPtr term;             // last term reached
    std::vector<Step> trace;  // steps taken, in order
};

// Runs at most `fuel` steps. Cycle detection compares each new term
// alpha-equally against every earlier term of the run.
Outcome reduce(const TermPtr& t, Strategy strategy, std::size_t fuel,
               RuleSet rules, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Reduction graphs
// ---------------------------------------------------------------------------

struct ReductionGraph {
    struct Edge {
        std::size_t from;
        Step step;
        std::size_t to;
    };

    std::vector<TermPtr> nodes;  // node 0 is the root; alpha-classes
    std::vector<Edge> edges;
    bool frontier_exhausted = true;

    std::vector<std::size_t> normal_nodes(RuleSet rules) const;
    bool has_cycle() const;
};

// Breadth-first closure of reducts from t, merging alpha-equivalent nodes.
// Stops early (frontier_exhausted = false) if more than node_cap nodes
// would be needed.
ReductionGraph build_graph(const TermPtr& t, RuleSet rules,
                           std::size_t node_cap);

// DOT rendering; normal forms are drawn double-circled.
std::string to_dot(const ReductionGraph& graph, RuleSet rules);

// ---------------------------------------------------------------------------
// Evaluation length
// ---------------------------------------------------------------------------

// Length of the longest reduction path to a normal form, over the whole
// reduction graph. Divergent if the graph has a cycle; CapExceeded if the
// graph cannot be explored within node_cap.
struct EvalLen {
    enum class Kind { Length, Divergent, CapExceeded };
    Kind kind;
    std::size_t length = 0;  // meaningful when kind == Length
};

EvalLen eval_len(const TermPtr& t, RuleSet rules, std::size_t node_cap);

// ---------------------------------------------------------------------------
// Progress
// ---------------------------------------------------------------------------

// Closed normal forms are values (core rules). Vacuous when t is open or
// reducible; Fails would carry the non-value normal form (none are expected).
Verdict progress_check(const TermPtr& t);

}  // namespace distlam
