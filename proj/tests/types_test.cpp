#include "doctest.h"

#include "distlam/generate.hpp"
#include "distlam/parse.hpp"
#include "distlam/pretty.hpp"
#include "distlam/types.hpp"

#include "oracles.hpp"

using namespace distlam;

namespace {

TypePtr ty(const std::string& text) { return parse_type(text); }

}  // namespace

TEST_CASE("type normal form") {
    CHECK(type_eq(type_nf(ty("A -> B & C")), ty("(A -> B) & (A -> C)")));
    CHECK(type_eq(type_nf(ty("A & B")), ty("A & B")));

    // two nested rewrites; the bounded search agrees the result is isomorphic
    TypePtr nested = ty("A -> B -> C & D");
    TypePtr expected = ty("(A -> B -> C) & (A -> B -> D)");
    CHECK(type_eq(type_nf(nested), expected));
    CHECK(iso_proof_search(nested, expected, 4));

    for (const TypePtr& t : enumerate_types(7, 2)) {
        TypePtr nf = type_nf(t);
        CHECK(is_type_nf(nf));
        // idempotence
        CHECK(type_eq(type_nf(nf), nf));
        // the step rewriter reaches the same normal form
        TypePtr cur = t;
        std::size_t steps = 0;
        while (auto next = distrib_step(cur)) {
            CHECK(distrib_measure(*next) < distrib_measure(cur));
            cur = *next;
            ++steps;
        }
        CHECK(type_eq(cur, nf));
        CHECK(steps == distrib_steps_to_nf(t));
    }
}

TEST_CASE("isomorphism decision") {
    CHECK(types_iso(ty("A -> B & C"), ty("(A -> B) & (A -> C)")));
    CHECK(types_iso(ty("A"), ty("A")));

    // commutativity is deliberately absent
    CHECK_FALSE(types_iso(ty("A & B"), ty("B & A")));
    CHECK_FALSE(iso_proof_search(ty("A & B"), ty("B & A"), 8));

    CHECK_FALSE(types_iso(ty("(A & B) & C"), ty("A & (B & C)")));
    CHECK_FALSE(types_iso(ty("(A & B) -> C"), ty("A -> B -> C")));
    CHECK_FALSE(types_iso(ty("A"), ty("B")));
}

TEST_CASE("conjunction decompositions mirror the equivalence facts") {
    auto types = enumerate_types(5, 2);
    for (const TypePtr& a : types) {
        for (const TypePtr& b : types) {
            TypePtr na = type_nf(a), nb = type_nf(b);
            if (!type_eq(na, nb)) continue;
            // equal NF conjunctions have equal components, same for arrows
            auto ca = split_conj(na), cb = split_conj(nb);
            if (ca && cb) {
                CHECK(type_eq(ca->first, cb->first));
                CHECK(type_eq(ca->second, cb->second));
            }
            auto aa = split_arrow(na), ab = split_arrow(nb);
            if (aa && ab) {
                CHECK(type_eq(aa->first, ab->first));
                CHECK(type_eq(aa->second, ab->second));
            }
        }
    }
    // If A & B is isomorphic to C -> D, then D splits into D1 & D2 with
    // A ~ C -> D1 and B ~ C -> D2.
    for (const TypePtr& conj_ty : types) {
        const auto* c = as_conj(conj_ty);
        if (!c) continue;
        for (const TypePtr& arr_ty : types) {
            const auto* ar = as_arrow(arr_ty);
            if (!ar || !types_iso(conj_ty, arr_ty)) continue;
            auto halves = split_conj(type_nf(ar->cod));
            REQUIRE(halves.has_value());
            CHECK(types_iso(c->left, arrow(ar->dom, halves->first)));
            CHECK(types_iso(c->right, arrow(ar->dom, halves->second)));
        }
    }
}

TEST_CASE("inference") {
    TypingContext empty;
    CHECK(type_eq(infer(empty, parse_term("\\x:A. <x, x>")),
                  ty("(A -> A) & (A -> A)")));
    CHECK(type_eq(infer(empty, parse_term("p1 (\\x:A. <x, \\y:B. x>)")),
                  ty("A -> A")));

    TypingContext gamma = parse_context("y:A").ctx;
    CHECK(type_eq(infer(gamma, parse_term("<\\x:A. x, \\x:A. x> y")),
                  ty("A & A")));

    // results are reported in normal form
    CHECK(type_eq(infer(empty, parse_term("\\x:A. \\y:B. <x, y>")),
                  type_nf(ty("A -> B -> A & B"))));

    // the oracle finds the same types up to isomorphism
    TermPtr sample = parse_term("p1 (\\x:A. <x, \\y:B. x>)");
    auto found = oracle::derivable_types(empty, sample, 3);
    CHECK(!found.empty());
    for (const TypePtr& f : found) {
        CHECK(types_iso(f, infer(empty, sample)));
    }
}

TEST_CASE("type errors") {
    TypingContext empty;
    TypingContext gamma = parse_context("y:A").ctx;

    CHECK_THROWS_AS(infer(empty, var("y")), TypeError);
    CHECK_THROWS_AS(infer(empty, parse_term("\\x:A. p1 x")), TypeError);
    CHECK_THROWS_AS(infer(gamma, parse_term("y y")), TypeError);
    CHECK_THROWS_AS(infer(gamma, parse_term("(\\x:A -> A. x) y")), TypeError);
    CHECK_THROWS_AS(infer(empty, parse_term("\\x. x")), TypeError);

    auto kind_of = [](auto thunk) {
        try {
            thunk();
        } catch (const TypeError& e) {
            return e.kind();
        }
        return TypeErrorKind::MissingAnnotation;
    };
    CHECK(kind_of([&] { infer(empty, var("y")); }) ==
          TypeErrorKind::UnboundVariable);
    CHECK(kind_of([&] { infer(empty, parse_term("\\x:A. p1 x")); }) ==
          TypeErrorKind::ProjectionOfNonConjunction);
    CHECK(kind_of([&] { infer(gamma, parse_term("y y")); }) ==
          TypeErrorKind::ApplicationOfNonArrow);
    CHECK(kind_of([&] { infer(gamma, parse_term("(\\x:A -> A. x) y")); }) ==
          TypeErrorKind::DomainMismatch);
    CHECK(kind_of([&] { infer(empty, parse_term("\\x. x")); }) ==
          TypeErrorKind::MissingAnnotation);

    // messages spell out the offending types and their normal forms
    try {
        infer(empty, parse_term("p1 (\\x:A. x)"));
        FAIL("expected a type error");
    } catch (const TypeError& e) {
        std::string message = e.what();
        CHECK(message.find("A -> A") != std::string::npos);
        CHECK(message.find("nf:") != std::string::npos);
    }
    try {
        infer(gamma, parse_term("(\\x:B. x) y"));
        FAIL("expected a type error");
    } catch (const TypeError& e) {
        std::string message = e.what();
        CHECK(message.find("A") != std::string::npos);
        CHECK(message.find("B") != std::string::npos);
    }
}

TEST_CASE("checking against an expected type") {
    TypingContext empty;
    CHECK(check(empty, parse_term("\\x:A. <x, x>"), ty("A -> A & A")));
    CHECK_FALSE(check(empty, parse_term("\\x:A. x"), ty("A -> B")));
    TypingContext gamma = parse_context("y:A").ctx;
    CHECK(check(gamma, var("y"), ty("A")));
}

TEST_CASE("subject reduction checks") {
    TypingContext empty;
    CHECK(subject_reduction_check(empty, parse_term("p1 (\\x:A. <x, x>)"))
              .holds());
    TypingContext gamma = parse_context("y:A").ctx;
    CHECK(subject_reduction_check(gamma,
                                  parse_term("<\\x:A. x, \\x:A. x> y"))
              .holds());
    CHECK(subject_reduction_check(empty, parse_term("\\x:A. x")).vacuous());
}

TEST_CASE("typed substitution checks") {
    TypingContext empty;
    CHECK(typed_subst_check(empty, "x", ty("A0 -> A0"), var("x"),
                            parse_term("\\y:A0. y"))
              .holds());

    TypingContext gamma = parse_context("z:A0").ctx;
    TermPtr t = parse_term("<x, x>");
    Verdict v = typed_subst_check(gamma, "x", ty("A0"), t, var("z"));
    CHECK(v.holds());
    CHECK(type_eq(infer(gamma, subst(t, "x", var("z"))), ty("A0 & A0")));

    // mismatched argument type is out of the lemma's scope
    CHECK(typed_subst_check(gamma, "x", ty("A0 -> A0"), var("x"), var("z"))
              .vacuous());
}

TEST_CASE("inferred types are unique up to isomorphism (small corpus)") {
    std::vector<TypePtr> annots;
    for (const TypePtr& t : enumerate_types(3, 2)) annots.push_back(t);
    TypingContext gamma = parse_context("x:A").ctx;
    std::size_t typable = 0;
    for (const TermPtr& t : enumerate_terms(4, {"x"}, annots)) {
        auto found = oracle::derivable_types(gamma, t, 3);
        TypePtr inferred;
        bool infer_ok = true;
        try {
            inferred = infer(gamma, t);
        } catch (const TypeError&) {
            infer_ok = false;
        }
        CAPTURE(pretty(t));
        CHECK(infer_ok == !found.empty());
        if (infer_ok) {
            ++typable;
            for (const TypePtr& f : found) CHECK(types_iso(f, inferred));
        }
    }
    CHECK(typable > 100);  // the corpus genuinely exercises the checker
}
