#include "doctest.h"

#include "distlam/generate.hpp"
#include "distlam/parse.hpp"
#include "distlam/pretty.hpp"

using namespace distlam;

TEST_CASE("term grammar") {
    CHECK(alpha_eq(parse_term("(\\x. x) y"),
                   app(abs("x", var("x")), var("y"))));

    // p1 binds the next atom, application is left-associative
    CHECK(alpha_eq(parse_term("p1 <x, y> z"),
                   app(proj(1, pair(var("x"), var("y"))), var("z"))));
    CHECK(alpha_eq(parse_term("p1 x y"),
                   app(proj(1, var("x")), var("y"))));
    CHECK(alpha_eq(parse_term("x p1 y"),
                   app(var("x"), proj(1, var("y")))));

    TermPtr annotated = parse_term("\\x:A & B. p1 x");
    const auto* a = as_abs(annotated);
    REQUIRE(a != nullptr);
    REQUIRE(a->annot != nullptr);
    CHECK(type_eq(a->annot, conj(atom("A"), atom("B"))));
    CHECK(alpha_eq(annotated,
                   abs("x", conj(atom("A"), atom("B")), proj(1, var("x")))));

    // a lambda body extends as far right as possible
    CHECK(alpha_eq(parse_term("\\x. x y"), abs("x", app(var("x"), var("y")))));
}

TEST_CASE("type grammar") {
    CHECK(type_eq(parse_type("A -> B & C"),
                  arrow(atom("A"), conj(atom("B"), atom("C")))));
    CHECK(type_eq(parse_type("(A -> B) & (A -> C)"),
                  conj(arrow(atom("A"), atom("B")),
                       arrow(atom("A"), atom("C")))));
    // both operators associate to the right
    CHECK(type_eq(parse_type("A & B & C"),
                  conj(atom("A"), conj(atom("B"), atom("C")))));
    CHECK(type_eq(parse_type("A -> B -> C"),
                  arrow(atom("A"), arrow(atom("B"), atom("C")))));
}

TEST_CASE("context grammar") {
    ContextParse one = parse_context("x:A, y:A -> B");
    CHECK(one.warnings.empty());
    REQUIRE(one.ctx.lookup("x") != nullptr);
    CHECK(type_eq(*one.ctx.lookup("x"), atom("A")));
    REQUIRE(one.ctx.lookup("y") != nullptr);
    CHECK(type_eq(*one.ctx.lookup("y"), arrow(atom("A"), atom("B"))));

    ContextParse empty = parse_context("");
    CHECK(empty.ctx.bindings().empty());
    CHECK(empty.warnings.empty());

    ContextParse shadowed = parse_context("x:A, x:B");
    CHECK(shadowed.warnings.size() == 1);
    CHECK(type_eq(*shadowed.ctx.lookup("x"), atom("B")));  // latest wins
}

TEST_CASE("printer output") {
    CHECK(pretty(app(abs("x", var("x")), var("y"))) == "(\\x. x) y");
    CHECK(pretty_type(arrow(atom("A"), conj(atom("B"), atom("C")))) ==
          "A -> B & C");
    CHECK(pretty(proj(1, pair(var("x"), var("y")))) == "p1 <x, y>");

    // nested conjunctions are always written explicitly
    CHECK(pretty_type(conj(atom("A"), conj(atom("B"), atom("C")))) ==
          "A & (B & C)");
    CHECK(pretty_type(conj(conj(atom("A"), atom("B")), atom("C"))) ==
          "(A & B) & C");
    CHECK(pretty_type(arrow(arrow(atom("A"), atom("B")), atom("C"))) ==
          "(A -> B) -> C");
    CHECK(pretty_type(conj(arrow(atom("A"), atom("B")),
                           arrow(atom("A"), atom("C")))) ==
          "(A -> B) & (A -> C)");
}

TEST_CASE("parse of pretty is the identity") {
    for (int i = 0; i < 500; ++i) {
        GenConfig cfg;
        cfg.seed = derive_seed(23, i);
        cfg.annotated = i % 2 == 0;
        TermPtr t = gen_term(cfg);
        CAPTURE(pretty(t));
        CHECK(alpha_eq(parse_term(pretty(t)), t));
    }
    for (const TypePtr& ty : enumerate_types(7, 2)) {
        CHECK(type_eq(parse_type(pretty_type(ty)), ty));
    }
}

TEST_CASE("parse errors carry spans") {
    const std::string inputs[] = {
        "", "(", "(x", "\\", "\\x", "\\x.", "<x", "<x,", "<x, y", "x )",
        "p1", "\\X. x", "\\x:a. x", "x -> y", "\\x:A -> . x", "x & y", "9",
    };
    for (const std::string& input : inputs) {
        CAPTURE(input);
        try {
            parse_term(input);
            FAIL_CHECK("expected a parse error for: " << input);
        } catch (const ParseError& e) {
            CHECK(e.span().start <= e.span().end);
            CHECK(e.span().end <= input.size());
            CHECK_FALSE(e.message().empty());
        }
    }
    CHECK_THROWS_AS(parse_type("A ->"), ParseError);
    CHECK_THROWS_AS(parse_type("a"), ParseError);
    CHECK_THROWS_AS(parse_context("x:"), ParseError);
    CHECK_THROWS_AS(parse_context("x"), ParseError);
}

TEST_CASE("reserved words and identifier shapes") {
    CHECK_THROWS_AS(parse_term("\\p1. x"), ParseError);
    CHECK(alpha_eq(parse_term("p11"), var("p11")));  // not the keyword
    CHECK(alpha_eq(parse_term("x1y2"), var("x1y2")));
}
