#include "distlam/types.hpp"

#include <cassert>
#include <functional>

#include "distlam/pretty.hpp"
#include "distlam/rewrite.hpp"

namespace distlam {

// ---------------------------------------------------------------------------
// Distributivity normal form
// ---------------------------------------------------------------------------

namespace {

// Arrow constructor that keeps normal forms normal: pushing an arrow into a
// conjunction codomain splits it.
TypePtr arrow_nf(const TypePtr& dom, const TypePtr& cod) {
    if (const auto* c = as_conj(cod)) {
        return conj(arrow_nf(dom, c->left), arrow_nf(dom, c->right));
    }
    return arrow(dom, cod);
}

}  // namespace

TypePtr type_nf(const TypePtr& t) {
    TypePtr result;
    if (as_atom(t)) {
        result = t;
    } else if (const auto* a = as_arrow(t)) {
        result = arrow_nf(type_nf(a->dom), type_nf(a->cod));
    } else {
        const auto* c = as_conj(t);
        result = conj(type_nf(c->left), type_nf(c->right));
    }
    assert(is_type_nf(result));
    return result;
}

bool is_type_nf(const TypePtr& t) {
    if (as_atom(t)) return true;
    if (const auto* a = as_arrow(t)) {
        return !as_conj(a->cod) && is_type_nf(a->dom) && is_type_nf(a->cod);
    }
    const auto* c = as_conj(t);
    return is_type_nf(c->left) && is_type_nf(c->right);
}

std::uint64_t distrib_measure(const TypePtr& t) {
    if (as_atom(t)) return 2;
    if (const auto* a = as_arrow(t)) {
        return distrib_measure(a->dom) * distrib_measure(a->cod);
    }
    const auto* c = as_conj(t);
    return distrib_measure(c->left) + distrib_measure(c->right) + 1;
}

std::optional<TypePtr> distrib_step(const TypePtr& t) {
    std::optional<TypePtr> stepped;
    if (as_atom(t)) {
        return std::nullopt;
    } else if (const auto* a = as_arrow(t)) {
        if (const auto* c = as_conj(a->cod)) {
            stepped = conj(arrow(a->dom, c->left), arrow(a->dom, c->right));
        } else if (auto dom = distrib_step(a->dom)) {
            stepped = arrow(*dom, a->cod);
        } else if (auto cod = distrib_step(a->cod)) {
            stepped = arrow(a->dom, *cod);
        }
    } else {
        const auto* c = as_conj(t);
        if (auto left = distrib_step(c->left)) {
            stepped = conj(*left, c->right);
        } else if (auto right = distrib_step(c->right)) {
            stepped = conj(c->left, *right);
        }
    }
    if (stepped) {
        assert(distrib_measure(*stepped) < distrib_measure(t));
    }
    return stepped;
}

std::size_t distrib_steps_to_nf(const TypePtr& t) {
    std::size_t steps = 0;
    TypePtr cur = t;
    while (auto next = distrib_step(cur)) {
        cur = *next;
        ++steps;
    }
    return steps;
}

bool types_iso(const TypePtr& a, const TypePtr& b) {
    return type_eq(type_nf(a), type_nf(b));
}

std::optional<std::pair<TypePtr, TypePtr>> split_conj(const TypePtr& t) {
    if (const auto* c = as_conj(t)) return std::make_pair(c->left, c->right);
    return std::nullopt;
}

std::optional<std::pair<TypePtr, TypePtr>> split_arrow(const TypePtr& t) {
    if (const auto* a = as_arrow(t)) return std::make_pair(a->dom, a->cod);
    return std::nullopt;
}

std::vector<TypePtr> conj_leaves(const TypePtr& t) {
    std::vector<TypePtr> out;
    std::function<void(const TypePtr&)> go = [&](const TypePtr& u) {
        if (const auto* c = as_conj(u)) {
            go(c->left);
            go(c->right);
        } else {
            out.push_back(u);
        }
    };
    go(t);
    return out;
}

// ---------------------------------------------------------------------------
// Inference
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void type_fail(TypeErrorKind kind, const std::string& lead,
                            const TypePtr& offending) {
    throw TypeError(kind, lead + ": " + pretty_type(offending) +
                              " (nf: " + pretty_type(type_nf(offending)) + ")");
}

// Rebuilds N's conjunction tree with every arrow leaf replaced by its
// codomain, requiring each leaf domain to match `arg_nf` exactly (both sides
// are normal forms, so this is the isomorphism check).
TypePtr apply_leaves(const TypePtr& n, const TypePtr& arg_nf,
                     const TypePtr& whole_fn_type) {
    if (const auto* c = as_conj(n)) {
        return conj(apply_leaves(c->left, arg_nf, whole_fn_type),
                    apply_leaves(c->right, arg_nf, whole_fn_type));
    }
    const auto* a = as_arrow(n);
    if (!a) {
        type_fail(TypeErrorKind::ApplicationOfNonArrow,
                  "application of a term whose type has a non-arrow component",
                  whole_fn_type);
    }
    if (!type_eq(a->dom, arg_nf)) {
        throw TypeError(TypeErrorKind::DomainMismatch,
                        "argument type " + pretty_type(arg_nf) +
                            " does not match domain " + pretty_type(a->dom) +
                            " of " + pretty_type(whole_fn_type));
    }
    return a->cod;
}

TypePtr infer_at(const TypingContext& ctx, const TermPtr& t) {
    if (const auto* v = as_fvar(t)) {
        const TypePtr* found = ctx.lookup(v->name);
        if (!found) {
            throw TypeError(TypeErrorKind::UnboundVariable,
                            "unbound variable: " + v->name);
        }
        return type_nf(*found);
    }
    if (as_bvar(t)) {
        // Binders are opened before descending, so this cannot happen on
        // complete terms.
        throw TypeError(TypeErrorKind::UnboundVariable,
                        "dangling bound variable");
    }
    if (const auto* a = as_abs(t)) {
        if (!a->annot) {
            throw TypeError(TypeErrorKind::MissingAnnotation,
                            "missing annotation on binder '" + a->hint + "'");
        }
        std::set<Name> avoid = ctx.domain();
        for (const Name& n : free_vars(a->body)) avoid.insert(n);
        Name x = fresh_name(a->hint, avoid);
        TypePtr body =
            infer_at(ctx.extended(x, a->annot), open_bound(a->body, var(x)));
        return arrow_nf(type_nf(a->annot), body);
    }
    if (const auto* ap = as_app(t)) {
        TypePtr fn = infer_at(ctx, ap->fn);
        TypePtr arg = infer_at(ctx, ap->arg);
        return apply_leaves(fn, arg, fn);
    }
    if (const auto* p = as_pair(t)) {
        return conj(infer_at(ctx, p->left), infer_at(ctx, p->right));
    }
    const auto* pr = as_proj(t);
    TypePtr body = infer_at(ctx, pr->body);
    const auto* c = as_conj(body);
    if (!c) {
        type_fail(TypeErrorKind::ProjectionOfNonConjunction,
                  "projection of a term whose type is not a conjunction", body);
    }
    return pr->index == 1 ? c->left : c->right;
}

}  // namespace

TypePtr infer(const TypingContext& ctx, const TermPtr& t) {
    return infer_at(ctx, t);
}

bool check(const TypingContext& ctx, const TermPtr& t, const TypePtr& expected) {
    return types_iso(expected, infer(ctx, t));
}

// ---------------------------------------------------------------------------
// Metatheory checks
// ---------------------------------------------------------------------------

Verdict subject_reduction_check(const TypingContext& ctx, const TermPtr& t) {
    TypePtr before = infer(ctx, t);
    auto steps = reducts(t, RuleSet::Core);
    if (steps.empty()) return Verdict::vacuously();
    for (const Step& step : steps) {
        TypePtr after;
        try {
            after = infer(ctx, step.target);
        } catch (const TypeError& e) {
            return Verdict::no("reduct fails to type: " + format_step(step) +
                               " (" + e.what() + ")");
        }
        if (!types_iso(before, after)) {
            return Verdict::no("type not preserved: " + format_step(step) +
                               " : " + pretty_type(before) + " vs " +
                               pretty_type(after));
        }
    }
    return Verdict::yes();
}

Verdict typed_subst_check(const TypingContext& ctx, const Name& x,
                          const TypePtr& a, const TermPtr& t,
                          const TermPtr& s) {
    TypePtr before, arg_type;
    try {
        before = infer(ctx.extended(x, a), t);
        arg_type = infer(ctx, s);
    } catch (const TypeError&) {
        return Verdict::vacuously();
    }
    if (!types_iso(a, arg_type)) return Verdict::vacuously();
    TermPtr substituted = subst(t, x, s);
    TypePtr after;
    try {
        after = infer(ctx, substituted);
    } catch (const TypeError& e) {
        return Verdict::no("substitution fails to type: " + pretty(substituted) +
                           " (" + e.what() + ")");
    }
    if (!types_iso(before, after)) {
        return Verdict::no("substitution changes type: " + pretty(substituted) +
                           " : " + pretty_type(before) + " vs " +
                           pretty_type(after));
    }
    return Verdict::yes();
}

}  // namespace distlam
