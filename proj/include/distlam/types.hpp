#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "distlam/syntax.hpp"

// Simple types up to the distributivity isomorphism
//
//     A -> (B & C)  ==  (A -> B) & (A -> C)
//
// decided by canonical forms: the isomorphism is oriented left-to-right and
// applied exhaustively, which terminates and has no critical pairs, so two
// types are isomorphic iff their normal forms coincide. Type checking is
// syntax-directed over binder-annotated terms, eliminations working on the
// normal form of the scrutinee's type.

namespace distlam {

// Ordered bindings; the most recent binding of a name shadows earlier ones.
class TypingContext {
public:
    TypingContext() = default;

    TypingContext extended(Name name, TypePtr type) const {
        TypingContext out = *this;
        out.bindings_.emplace_back(std::move(name), std::move(type));
        return out;
    }

    void push(Name name, TypePtr type) {
        bindings_.emplace_back(std::move(name), std::move(type));
    }

    const TypePtr* lookup(const Name& name) const {
        for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
            if (it->first == name) return &it->second;
        }
        return nullptr;
    }

    const std::vector<std::pair<Name, TypePtr>>& bindings() const {
        return bindings_;
    }

    std::set<Name> domain() const {
        std::set<Name> out;
        for (const auto& [n, _] : bindings_) out.insert(n);
        return out;
    }

private:
    std::vector<std::pair<Name, TypePtr>> bindings_;
};

// Distributivity normal form: no subterm of shape X -> (Y & Z).
TypePtr type_nf(const TypePtr& t);
bool is_type_nf(const TypePtr& t);

// One leftmost-outermost distributivity rewrite, or nullopt if t is normal.
// Each step strictly decreases the measure used for the termination
// argument (asserted in debug builds); iterating it reaches type_nf(t).
std::optional<TypePtr> distrib_step(const TypePtr& t);

// Steps distrib_step takes to reach the normal form.
std::size_t distrib_steps_to_nf(const TypePtr& t);

// Termination measure: atoms 2, m(a & b) = m(a)+m(b)+1, m(a -> b) = m(a)*m(b).
std::uint64_t distrib_measure(const TypePtr& t);

bool types_iso(const TypePtr& a, const TypePtr& b);

// Shape decompositions (usable on normal forms to mirror the equivalence
// facts about isomorphic arrows and conjunctions).
std::optional<std::pair<TypePtr, TypePtr>> split_conj(const TypePtr& t);
std::optional<std::pair<TypePtr, TypePtr>> split_arrow(const TypePtr& t);

// Leaves of the conjunction spine, left to right ("A & (B & C)" has three).
std::vector<TypePtr> conj_leaves(const TypePtr& t);

// ---------------------------------------------------------------------------
// Type errors
// ---------------------------------------------------------------------------

enum class TypeErrorKind {
    UnboundVariable,
    ProjectionOfNonConjunction,
    ApplicationOfNonArrow,
    DomainMismatch,
    MissingAnnotation,
};

class TypeError : public std::runtime_error {
public:
    TypeError(TypeErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    TypeErrorKind kind() const { return kind_; }

private:
    TypeErrorKind kind_;
};

// ---------------------------------------------------------------------------
// Checking
// ---------------------------------------------------------------------------

// Infers the type of an annotated term; the result is always in normal form.
// Throws TypeError when the term does not type.
TypePtr infer(const TypingContext& ctx, const TermPtr& t);

// True iff t is typable and its type is isomorphic to `expected`.
bool check(const TypingContext& ctx, const TermPtr& t, const TypePtr& expected);

// Every one-step reduct of t (core rules) re-types to an isomorphic type.
// Vacuous when t is normal. t must be well-typed in ctx.
Verdict subject_reduction_check(const TypingContext& ctx, const TermPtr& t);

// With ctx + x:a |- t : B and ctx |- s : A' ~ a, the substitution t[s/x]
// types in ctx with a type isomorphic to B. Vacuous when the premises fail.
Verdict typed_subst_check(const TypingContext& ctx, const Name& x,
                          const TypePtr& a, const TermPtr& t, const TermPtr& s);

}  // namespace distlam
