#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

// Core syntax of the distributive lambda-calculus: simple types and terms
// with pairs and projections. Terms use de Bruijn indices for bound
// variables and names for free ones, so alpha-equivalence is structural
// equality and substitution never captures. Binder names are kept as
// printing hints only.

namespace distlam {

using Name = std::string;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

class Type;
using TypePtr = std::shared_ptr<const Type>;

class Type {
public:
    struct Atom { Name name; };
    struct Arrow { TypePtr dom, cod; };
    struct Conj { TypePtr left, right; };
    using Node = std::variant<Atom, Arrow, Conj>;

    explicit Type(Node node) : node_(std::move(node)) {}
    const Node& node() const { return node_; }

private:
    Node node_;
};

TypePtr atom(Name name);
TypePtr arrow(TypePtr dom, TypePtr cod);
TypePtr conj(TypePtr left, TypePtr right);

const Type::Atom* as_atom(const TypePtr& t);
const Type::Arrow* as_arrow(const TypePtr& t);
const Type::Conj* as_conj(const TypePtr& t);

// Syntactic equality. Conjunction is a binary tree; there is no implicit
// flattening or reordering.
bool type_eq(const TypePtr& a, const TypePtr& b);
std::size_t type_size(const TypePtr& t);

// Canonical encoding; equal strings iff type_eq.
std::string type_key(const TypePtr& t);

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
public:
    struct BVar { int index; };                           // bound, de Bruijn
    struct FVar { Name name; };                           // free, by name
    struct Abs { Name hint; TypePtr annot; TermPtr body; };  // annot may be null
    struct App { TermPtr fn, arg; };
    struct Pair { TermPtr left, right; };
    struct Proj { int index; TermPtr body; };             // index is 1 or 2
    using Node = std::variant<BVar, FVar, Abs, App, Pair, Proj>;

    explicit Term(Node node) : node_(std::move(node)) {}
    const Node& node() const { return node_; }

private:
    Node node_;
};

// Named builders. abs() closes the binder: free occurrences of `binder` in
// `body` become the bound variable.
TermPtr var(Name name);
TermPtr abs(const Name& binder, TermPtr body);
TermPtr abs(const Name& binder, TypePtr annot, TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr pair(TermPtr left, TermPtr right);
TermPtr proj(int index, TermPtr body);

// Raw builders; bodies already carry correct indices.
TermPtr bvar(int index);
TermPtr abs_raw(Name hint, TypePtr annot, TermPtr body);

const Term::BVar* as_bvar(const TermPtr& t);
const Term::FVar* as_fvar(const TermPtr& t);
const Term::Abs* as_abs(const TermPtr& t);
const Term::App* as_app(const TermPtr& t);
const Term::Pair* as_pair(const TermPtr& t);
const Term::Proj* as_proj(const TermPtr& t);

// Alpha-equivalence: structural equality ignoring binder hints. Annotations
// must agree syntactically (both absent, or both present and type_eq).
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// Node count: variables 1, unary nodes 1 + body, binary nodes 1 + both sides.
std::size_t term_size(const TermPtr& t);

std::set<Name> free_vars(const TermPtr& t);
bool is_closed(const TermPtr& t);
std::size_t occurrences(const TermPtr& t, const Name& x);

// Values have an introduction form outermost (variable, abstraction, pair);
// neutral terms an elimination form (variable, application, projection).
// Neutral terms need not be normal.
bool is_value(const TermPtr& t);
bool is_neutral(const TermPtr& t);

// Capture-avoiding substitution of s for the free variable x in t.
// s must be a complete term (no dangling indices).
TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& s);

// Substitute `arg` for the outermost bound variable of an abstraction body.
// Handles dangling indices in `arg` (they are shifted past binders crossed
// inside `body`), so it is usable on redexes found under binders.
TermPtr open_bound(const TermPtr& body, const TermPtr& arg);

// Shift dangling indices >= cutoff by `by`.
TermPtr shift_indices(const TermPtr& t, int by, int cutoff);

// Canonical alpha-invariant encoding; equal strings iff alpha_eq.
std::string term_key(const TermPtr& t);

// A name usable as an identifier, based on hint, not in avoid.
Name fresh_name(const Name& hint, const std::set<Name>& avoid);

// ---------------------------------------------------------------------------
// Positions
// ---------------------------------------------------------------------------

// A position addresses a subterm by the path from the root; plugging a
// context is subterm replacement at a position.
enum class PathStep { AbsBody, AppFn, AppArg, PairL, PairR, ProjBody };
using Position = std::vector<PathStep>;

// Subterm of t at pos, or nullptr if pos is not valid for t.
TermPtr subterm_at(const TermPtr& t, const Position& pos);

// t with the subterm at pos replaced by s (no index adjustment), or nullptr
// if pos is invalid.
TermPtr replace_at(const TermPtr& t, const Position& pos, const TermPtr& s);

// Positions of the free occurrences of x in t, in document order.
std::vector<Position> occurrence_positions(const TermPtr& t, const Name& x);

// "root" for the empty position, otherwise dot-joined steps, e.g. "fn.body".
std::string position_to_string(const Position& pos);

// ---------------------------------------------------------------------------
// Verdicts (shared by the metatheory checks)
// ---------------------------------------------------------------------------

struct Verdict {
    enum class Kind { Holds, VacuouslyHolds, Fails };
    Kind kind = Kind::Holds;
    std::string details;  // counterexample description when Fails

    bool holds() const { return kind == Kind::Holds; }
    bool vacuous() const { return kind == Kind::VacuouslyHolds; }
    bool fails() const { return kind == Kind::Fails; }

    static Verdict yes() { return {Kind::Holds, {}}; }
    static Verdict vacuously() { return {Kind::VacuouslyHolds, {}}; }
    static Verdict no(std::string details) {
        return {Kind::Fails, std::move(details)};
    }
};

}  // namespace distlam
