#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "distlam/syntax.hpp"
#include "distlam/types.hpp"

// Random and exhaustive generators for terms and types, plus the bounded
// equational search used as an independent oracle for the isomorphism
// decision. All randomness is by explicit seed; identical configs give
// identical output on every platform.

namespace distlam {

struct GenConfig {
    std::uint64_t seed = 42;
    std::size_t max_size = 12;   // node budget
    std::size_t var_pool = 3;    // distinct free-variable names
    std::size_t atom_pool = 2;   // distinct type atoms
    bool closed = false;         // wrap leftover free variables in binders
    bool annotated = false;      // annotate binders (untyped generator)
};

// Deterministic per-trial seed derivation.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Size-bounded random term. Constructor weights favor applications and
// projections so that redexes are frequent: Var 20, Abs 20, App 25,
// Pair 15, Proj 20 (restricted to what the remaining budget allows).
TermPtr gen_term(const GenConfig& cfg);

// Random type over cfg.atom_pool atoms, at most max_size nodes.
TypePtr gen_type(const GenConfig& cfg, std::size_t max_size);

struct GenStats {
    std::size_t detours = 0;           // type-isomorphism detours taken
    std::size_t conj_headed_apps = 0;  // applications whose function type
                                       // normalizes to a conjunction
};

// Generates a typing derivation top-down and extracts its term; the result
// always satisfies infer. Derivations take isomorphism detours (replacing a
// goal by an equivalent type) with fixed probability, so pair-typed terms
// show up in function position and similar.
std::pair<TypingContext, TermPtr> gen_typed_term(const GenConfig& cfg,
                                                 GenStats* stats = nullptr);

// Goal-directed generation of a term of the given type, or nullptr when the
// context cannot support the goal (e.g. an atom with no matching variable).
TermPtr gen_term_of_type(const TypingContext& ctx, const TypePtr& goal,
                         std::uint64_t seed, std::size_t budget);

// ---------------------------------------------------------------------------
// Isomorphism oracle
// ---------------------------------------------------------------------------

// All types reachable from t by one distributivity rewrite, in either
// direction, at any position.
std::vector<TypePtr> iso_neighbors(const TypePtr& t);

// Bounded closure of the isomorphism rules: true iff b is reachable from a
// within `depth` rewrites. Used solely as an independent check of types_iso;
// depth = distrib_steps_to_nf(a) + distrib_steps_to_nf(b) makes the search
// a complete decision procedure for the pair.
bool iso_proof_search(const TypePtr& a, const TypePtr& b, std::size_t depth);

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

// All types of at most max_size nodes over the first atom_pool atom names.
std::vector<TypePtr> enumerate_types(std::size_t max_size,
                                     std::size_t atom_pool);

// All terms of at most max_size nodes whose free variables are drawn from
// free_names and whose binder annotations are drawn from annots (a nullptr
// entry stands for "no annotation").
std::vector<TermPtr> enumerate_terms(std::size_t max_size,
                                     const std::vector<Name>& free_names,
                                     const std::vector<TypePtr>& annots);

std::vector<TermPtr> enumerate_closed_terms(std::size_t max_size);

}  // namespace distlam
