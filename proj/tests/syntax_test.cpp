#include "doctest.h"

#include "distlam/generate.hpp"
#include "distlam/parse.hpp"
#include "distlam/pretty.hpp"
#include "distlam/syntax.hpp"

#include "oracles.hpp"

using namespace distlam;

TEST_CASE("substitution basics") {
    TermPtr id = parse_term("\\y. y");

    // variable hit
    CHECK(alpha_eq(subst(var("x"), "x", id), id));

    // binder renamed away from the substituted free variable
    TermPtr renamed = subst(parse_term("\\y. x"), "x", var("y"));
    CHECK(alpha_eq(renamed, abs("z", var("y"))));
    CHECK(free_vars(renamed) == std::set<Name>{"y"});
    // the printed form must not capture y
    CHECK(alpha_eq(parse_term(pretty(renamed)), renamed));

    // no-shadowing case agrees with plain textual replacement
    std::string source = "<x, p1 x>";
    TermPtr direct = subst(parse_term(source), "x", id);
    TermPtr textual =
        parse_term(oracle::textual_subst(source, "x", "\\y. y"));
    CHECK(alpha_eq(direct, textual));
    CHECK(alpha_eq(direct, parse_term("<\\y. y, p1 (\\y. y)>")));
}

TEST_CASE("alpha equivalence") {
    CHECK(alpha_eq(parse_term("\\x. x"), parse_term("\\y. y")));
    CHECK_FALSE(alpha_eq(parse_term("\\x. \\y. x"), parse_term("\\a. \\b. b")));
    CHECK(alpha_eq(parse_term("<\\x. x, y>"), parse_term("<\\z. z, y>")));

    // annotations must agree syntactically
    CHECK_FALSE(alpha_eq(parse_term("\\x:A. x"), parse_term("\\x. x")));
    CHECK_FALSE(alpha_eq(parse_term("\\x:A. x"), parse_term("\\x:B. x")));
    CHECK(alpha_eq(parse_term("\\x:A -> B. x"), parse_term("\\y:A -> B. y")));
    // isomorphic but distinct annotations differ
    CHECK_FALSE(alpha_eq(parse_term("\\x:A -> B & C. x"),
                         parse_term("\\x:(A -> B) & (A -> C). x")));
}

TEST_CASE("term size") {
    CHECK(term_size(var("x")) == 1);
    CHECK(term_size(parse_term("\\x. x")) == 2);
    CHECK(term_size(parse_term("p1 <x, y>")) == 4);
}

TEST_CASE("free variables and closedness") {
    CHECK(free_vars(parse_term("\\x. x y")) == std::set<Name>{"y"});
    CHECK(is_closed(parse_term("\\x. \\y. <x, y>")));
    CHECK(free_vars(parse_term("p1 x")) == std::set<Name>{"x"});
    CHECK_FALSE(is_closed(var("x")));
}

TEST_CASE("values and neutral terms") {
    CHECK(is_value(parse_term("<x, y>")));
    CHECK(is_neutral(parse_term("p1 (\\x. x)")));  // need not be normal
    CHECK(is_value(var("x")));
    CHECK(is_neutral(var("x")));
    CHECK(is_value(parse_term("\\x. x")));
    CHECK_FALSE(is_neutral(parse_term("\\x. x")));
    CHECK(is_neutral(parse_term("x y")));
    CHECK_FALSE(is_value(parse_term("x y")));
}

TEST_CASE("value/neutral split covers every term") {
    for (int i = 0; i < 300; ++i) {
        GenConfig cfg;
        cfg.seed = derive_seed(7, i);
        TermPtr t = gen_term(cfg);
        CHECK((is_value(t) || is_neutral(t)));
        bool both = is_value(t) && is_neutral(t);
        CHECK(both == (as_fvar(t) != nullptr || as_bvar(t) != nullptr));
    }
}

TEST_CASE("substitution properties") {
    for (int i = 0; i < 300; ++i) {
        GenConfig cfg;
        cfg.seed = derive_seed(11, i);
        TermPtr t = gen_term(cfg);
        GenConfig scfg;
        scfg.seed = derive_seed(13, i);
        scfg.max_size = 6;
        TermPtr s = gen_term(scfg);

        // identity substitution
        CHECK(alpha_eq(subst(t, "x0", var("x0")), t));

        // substituting a name that does not occur is a no-op
        CHECK(alpha_eq(subst(t, "zzz", s), t));

        // size bookkeeping
        std::size_t occ = occurrences(t, "x0");
        CHECK(term_size(subst(t, "x0", s)) ==
              term_size(t) + occ * (term_size(s) - 1));
        CHECK(occ == occurrence_positions(t, "x0").size());
    }
}

TEST_CASE("positions address subterms") {
    TermPtr t = parse_term("p1 <(\\x. x) y, z>");
    Position root, inner{PathStep::ProjBody, PathStep::PairL};
    CHECK(alpha_eq(subterm_at(t, root), t));
    CHECK(alpha_eq(subterm_at(t, inner), parse_term("(\\x. x) y")));
    CHECK(subterm_at(t, {PathStep::AppFn}) == nullptr);  // invalid path

    TermPtr replaced = replace_at(t, inner, var("w"));
    CHECK(alpha_eq(replaced, parse_term("p1 <w, z>")));
    CHECK(replace_at(t, {PathStep::AbsBody}, var("w")) == nullptr);

    CHECK(position_to_string(root) == "root");
    CHECK(position_to_string(inner) == "body.left");
}

TEST_CASE("fresh names avoid collisions and bad hints") {
    std::set<Name> avoid{"x", "x1"};
    CHECK(fresh_name("x", avoid) == "x2");
    CHECK(fresh_name("y", avoid) == "y");
    CHECK(fresh_name("p1", {}) == "x");   // reserved word
    CHECK(fresh_name("Bad", {}) == "x");  // uppercase is a type identifier
}

TEST_CASE("term keys identify alpha classes") {
    for (int i = 0; i < 200; ++i) {
        GenConfig a, b;
        a.seed = derive_seed(17, i);
        b.seed = derive_seed(19, i);
        TermPtr t = gen_term(a), s = gen_term(b);
        CHECK((term_key(t) == term_key(s)) == alpha_eq(t, s));
    }
    CHECK(term_key(parse_term("\\x. x")) == term_key(parse_term("\\y. y")));
}
