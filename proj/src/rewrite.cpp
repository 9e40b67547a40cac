#include "distlam/rewrite.hpp"

#include <cassert>
#include <functional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "distlam/pretty.hpp"

namespace distlam {

const char* label_name(StepLabel label) {
    switch (label) {
        case StepLabel::Beta: return "beta";
        case StepLabel::Pi1: return "pi1";
        case StepLabel::Pi2: return "pi2";
        case StepLabel::PairApp: return "pair-app";
        case StepLabel::ProjAbs1: return "proj-abs1";
        case StepLabel::ProjAbs2: return "proj-abs2";
        case StepLabel::AbsPair: return "abs-pair";
        case StepLabel::ProjApp1: return "proj-app1";
        case StepLabel::ProjApp2: return "proj-app2";
    }
    return "?";
}

bool is_extended_label(StepLabel label) {
    return label == StepLabel::AbsPair || label == StepLabel::ProjApp1 ||
           label == StepLabel::ProjApp2;
}

std::string format_step(const Step& step) {
    return std::string(label_name(step.label)) + " @ " +
           position_to_string(step.position) + " : " + pretty(step.source) +
           " --> " + pretty(step.target);
}

std::string format_trace(const std::vector<Step>& trace) {
    std::string out;
    for (const Step& s : trace) {
        out += format_step(s);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Top-level rules
// ---------------------------------------------------------------------------

std::vector<std::pair<StepLabel, TermPtr>> top_step(const TermPtr& t,
                                                    RuleSet rules) {
    std::vector<std::pair<StepLabel, TermPtr>> out;
    if (const auto* ap = as_app(t)) {
        if (const auto* fn = as_abs(ap->fn)) {
            out.emplace_back(StepLabel::Beta, open_bound(fn->body, ap->arg));
        } else if (const auto* p = as_pair(ap->fn)) {
            out.emplace_back(StepLabel::PairApp,
                             pair(app(p->left, ap->arg), app(p->right, ap->arg)));
        }
    } else if (const auto* pr = as_proj(t)) {
        if (const auto* p = as_pair(pr->body)) {
            out.emplace_back(pr->index == 1 ? StepLabel::Pi1 : StepLabel::Pi2,
                             pr->index == 1 ? p->left : p->right);
        } else if (const auto* a = as_abs(pr->body)) {
            out.emplace_back(
                pr->index == 1 ? StepLabel::ProjAbs1 : StepLabel::ProjAbs2,
                abs_raw(a->hint, a->annot, proj(pr->index, a->body)));
        } else if (rules == RuleSet::Extended) {
            if (const auto* inner = as_app(pr->body)) {
                out.emplace_back(
                    pr->index == 1 ? StepLabel::ProjApp1 : StepLabel::ProjApp2,
                    app(proj(pr->index, inner->fn), inner->arg));
            }
        }
    } else if (rules == RuleSet::Extended) {
        if (const auto* a = as_abs(t)) {
            if (const auto* p = as_pair(a->body)) {
                out.emplace_back(StepLabel::AbsPair,
                                 pair(abs_raw(a->hint, a->annot, p->left),
                                      abs_raw(a->hint, a->annot, p->right)));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Contextual closure
// ---------------------------------------------------------------------------

namespace {

void collect_reducts(const TermPtr& root, const TermPtr& here, RuleSet rules,
                     Position& path, std::vector<Step>& out) {
    for (auto& [label, reduct] : top_step(here, rules)) {
        TermPtr target = replace_at(root, path, reduct);
        out.push_back(Step{label, path, root, target});
    }
    if (const auto* a = as_abs(here)) {
        path.push_back(PathStep::AbsBody);
        collect_reducts(root, a->body, rules, path, out);
        path.pop_back();
    } else if (const auto* ap = as_app(here)) {
        path.push_back(PathStep::AppFn);
        collect_reducts(root, ap->fn, rules, path, out);
        path.back() = PathStep::AppArg;
        collect_reducts(root, ap->arg, rules, path, out);
        path.pop_back();
    } else if (const auto* p = as_pair(here)) {
        path.push_back(PathStep::PairL);
        collect_reducts(root, p->left, rules, path, out);
        path.back() = PathStep::PairR;
        collect_reducts(root, p->right, rules, path, out);
        path.pop_back();
    } else if (const auto* pr = as_proj(here)) {
        path.push_back(PathStep::ProjBody);
        collect_reducts(root, pr->body, rules, path, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<Step> reducts(const TermPtr& t, RuleSet rules) {
    std::vector<Step> out;
    Position path;
    collect_reducts(t, t, rules, path, out);
    return out;
}

namespace {

bool has_redex(const TermPtr& t, RuleSet rules) {
    if (!top_step(t, rules).empty()) return true;
    if (const auto* a = as_abs(t)) return has_redex(a->body, rules);
    if (const auto* ap = as_app(t)) {
        return has_redex(ap->fn, rules) || has_redex(ap->arg, rules);
    }
    if (const auto* p = as_pair(t)) {
        return has_redex(p->left, rules) || has_redex(p->right, rules);
    }
    if (const auto* pr = as_proj(t)) return has_redex(pr->body, rules);
    return false;
}

}  // namespace

bool is_normal(const TermPtr& t, RuleSet rules) { return !has_redex(t, rules); }

// ---------------------------------------------------------------------------
// Leftmost-outermost
// ---------------------------------------------------------------------------

namespace {

// Returns the LO step of `here` relative to `root` with `path` the position
// of `here`. When no top rule fires at an application or projection node its
// head is necessarily neutral, so the descent clauses below implement the LO
// inference rules exactly, with top rules given priority.
std::optional<Step> lo_at(const TermPtr& root, const TermPtr& here,
                          Position& path) {
    auto top = top_step(here, RuleSet::Core);
    if (!top.empty()) {
        return Step{top[0].first, path, root, replace_at(root, path, top[0].second)};
    }
    if (const auto* a = as_abs(here)) {
        path.push_back(PathStep::AbsBody);
        auto step = lo_at(root, a->body, path);
        path.pop_back();
        return step;
    }
    if (const auto* ap = as_app(here)) {
        path.push_back(PathStep::AppFn);
        auto left = lo_at(root, ap->fn, path);
        path.pop_back();
        if (left) return left;
        path.push_back(PathStep::AppArg);
        auto right = lo_at(root, ap->arg, path);
        path.pop_back();
        return right;
    }
    if (const auto* p = as_pair(here)) {
        path.push_back(PathStep::PairL);
        auto left = lo_at(root, p->left, path);
        path.pop_back();
        if (left) return left;
        path.push_back(PathStep::PairR);
        auto right = lo_at(root, p->right, path);
        path.pop_back();
        return right;
    }
    if (const auto* pr = as_proj(here)) {
        path.push_back(PathStep::ProjBody);
        auto step = lo_at(root, pr->body, path);
        path.pop_back();
        return step;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Step> lo_step(const TermPtr& t, RuleSet rules) {
    if (rules != RuleSet::Core) {
        throw std::invalid_argument(
            "leftmost-outermost reduction is defined for the core rules only");
    }
    Position path;
    return lo_at(t, t, path);
}

// ---------------------------------------------------------------------------
// Iterated reduction
// ---------------------------------------------------------------------------

Outcome reduce(const TermPtr& t, Strategy strategy, std::size_t fuel,
               RuleSet rules, std::uint64_t seed) {
    if (strategy == Strategy::Lo && rules != RuleSet::Core) {
        throw std::invalid_argument(
            "leftmost-outermost reduction is defined for the core rules only");
    }
    std::mt19937_64 rng(seed);
    Outcome out{Outcome::Status::NormalForm, t, {}};
    std::unordered_set<std::string> seen{term_key(t)};
    for (std::size_t steps = 0;; ++steps) {
        std::optional<Step> next;
        if (strategy == Strategy::Lo) {
            next = lo_step(out.term, rules);
        } else {
            auto all = reducts(out.term, rules);
            if (!all.empty()) {
                std::size_t i = strategy == Strategy::First
                                    ? 0
                                    : static_cast<std::size_t>(rng() % all.size());
                next = all[i];
            }
        }
        if (!next) {
            out.status = Outcome::Status::NormalForm;
            return out;
        }
        if (steps == fuel) {
            out.status = Outcome::Status::FuelExhausted;
            return out;
        }
        out.term = next->target;
        out.trace.push_back(std::move(*next));
        if (!seen.insert(term_key(out.term)).second) {
            out.status = Outcome::Status::CycleDetected;
            return out;
        }
    }
}

// ---------------------------------------------------------------------------
// Reduction graphs
// ---------------------------------------------------------------------------

std::vector<std::size_t> ReductionGraph::normal_nodes(RuleSet rules) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (is_normal(nodes[i], rules)) out.push_back(i);
    }
    return out;
}

bool ReductionGraph::has_cycle() const {
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (const Edge& e : edges) adj[e.from].push_back(e.to);
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> state(nodes.size(), 0);
    std::function<bool(std::size_t)> dfs = [&](std::size_t n) {
        state[n] = 1;
        for (std::size_t m : adj[n]) {
            if (state[m] == 1) return true;
            if (state[m] == 0 && dfs(m)) return true;
        }
        state[n] = 2;
        return false;
    };
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        if (state[n] == 0 && dfs(n)) return true;
    }
    return false;
}

ReductionGraph build_graph(const TermPtr& t, RuleSet rules,
                           std::size_t node_cap) {
    ReductionGraph graph;
    std::unordered_map<std::string, std::size_t> index;
    graph.nodes.push_back(t);
    index.emplace(term_key(t), 0);
    std::vector<std::size_t> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::size_t from = queue[qi];
        for (Step& step : reducts(graph.nodes[from], rules)) {
            std::string key = term_key(step.target);
            auto it = index.find(key);
            std::size_t to;
            if (it != index.end()) {
                to = it->second;
            } else {
                if (graph.nodes.size() >= node_cap) {
                    graph.frontier_exhausted = false;
                    return graph;
                }
                to = graph.nodes.size();
                graph.nodes.push_back(step.target);
                index.emplace(std::move(key), to);
                queue.push_back(to);
            }
            graph.edges.push_back(
                ReductionGraph::Edge{from, std::move(step), to});
        }
    }
    return graph;
}

std::string to_dot(const ReductionGraph& graph, RuleSet rules) {
    auto quote = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out;
    };
    std::string out = "digraph reduction {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        out += "  n" + std::to_string(i) + " [label=\"" +
               quote(pretty(graph.nodes[i])) + "\"";
        if (is_normal(graph.nodes[i], rules)) out += ", shape=doublecircle";
        out += "];\n";
    }
    for (const auto& e : graph.edges) {
        out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) +
               " [label=\"" + label_name(e.step.label) + " @ " +
               position_to_string(e.step.position) + "\"];\n";
    }
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation length
// ---------------------------------------------------------------------------

EvalLen eval_len(const TermPtr& t, RuleSet rules, std::size_t node_cap) {
    ReductionGraph graph = build_graph(t, rules, node_cap);
    if (!graph.frontier_exhausted) return {EvalLen::Kind::CapExceeded, 0};
    if (graph.has_cycle()) return {EvalLen::Kind::Divergent, 0};
    std::vector<std::vector<std::size_t>> adj(graph.nodes.size());
    for (const auto& e : graph.edges) adj[e.from].push_back(e.to);
    // Longest path in a finite acyclic graph; sinks are exactly the normal
    // forms since the graph is exhausted.
    std::vector<std::size_t> memo(graph.nodes.size(), SIZE_MAX);
    std::function<std::size_t(std::size_t)> longest = [&](std::size_t n) {
        if (memo[n] != SIZE_MAX) return memo[n];
        std::size_t best = 0;
        for (std::size_t m : adj[n]) best = std::max(best, 1 + longest(m));
        return memo[n] = best;
    };
    return {EvalLen::Kind::Length, longest(0)};
}

// ---------------------------------------------------------------------------
// Progress
// ---------------------------------------------------------------------------

Verdict progress_check(const TermPtr& t) {
    if (!is_closed(t) || !is_normal(t, RuleSet::Core)) {
        return Verdict::vacuously();
    }
    if (is_value(t)) return Verdict::yes();
    return Verdict::no("closed normal form is not a value: " + pretty(t));
}

}  // namespace distlam
