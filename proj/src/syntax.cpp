#include "distlam/syntax.hpp"

#include <cassert>
#include <cctype>
#include <functional>
#include <sstream>

namespace distlam {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

TypePtr atom(Name name) {
    return std::make_shared<Type>(Type::Atom{std::move(name)});
}

TypePtr arrow(TypePtr dom, TypePtr cod) {
    return std::make_shared<Type>(Type::Arrow{std::move(dom), std::move(cod)});
}

TypePtr conj(TypePtr left, TypePtr right) {
    return std::make_shared<Type>(Type::Conj{std::move(left), std::move(right)});
}

const Type::Atom* as_atom(const TypePtr& t) {
    return std::get_if<Type::Atom>(&t->node());
}
const Type::Arrow* as_arrow(const TypePtr& t) {
    return std::get_if<Type::Arrow>(&t->node());
}
const Type::Conj* as_conj(const TypePtr& t) {
    return std::get_if<Type::Conj>(&t->node());
}

bool type_eq(const TypePtr& a, const TypePtr& b) {
    if (a.get() == b.get()) return true;
    if (const auto* x = as_atom(a)) {
        const auto* y = as_atom(b);
        return y && x->name == y->name;
    }
    if (const auto* x = as_arrow(a)) {
        const auto* y = as_arrow(b);
        return y && type_eq(x->dom, y->dom) && type_eq(x->cod, y->cod);
    }
    const auto* x = as_conj(a);
    const auto* y = as_conj(b);
    return y && type_eq(x->left, y->left) && type_eq(x->right, y->right);
}

std::size_t type_size(const TypePtr& t) {
    if (as_atom(t)) return 1;
    if (const auto* a = as_arrow(t)) return 1 + type_size(a->dom) + type_size(a->cod);
    const auto* c = as_conj(t);
    return 1 + type_size(c->left) + type_size(c->right);
}

std::string type_key(const TypePtr& t) {
    std::string out;
    std::function<void(const TypePtr&)> go = [&](const TypePtr& u) {
        if (const auto* a = as_atom(u)) {
            out += 'a';
            out += a->name;
            out += ';';
        } else if (const auto* ar = as_arrow(u)) {
            out += 'f';
            go(ar->dom);
            go(ar->cod);
        } else {
            out += 'c';
            const auto* c = as_conj(u);
            go(c->left);
            go(c->right);
        }
    };
    go(t);
    return out;
}

// ---------------------------------------------------------------------------
// Term builders
// ---------------------------------------------------------------------------

TermPtr var(Name name) {
    return std::make_shared<Term>(Term::FVar{std::move(name)});
}

TermPtr bvar(int index) {
    return std::make_shared<Term>(Term::BVar{index});
}

TermPtr abs_raw(Name hint, TypePtr annot, TermPtr body) {
    return std::make_shared<Term>(
        Term::Abs{std::move(hint), std::move(annot), std::move(body)});
}

TermPtr app(TermPtr fn, TermPtr arg) {
    return std::make_shared<Term>(Term::App{std::move(fn), std::move(arg)});
}

TermPtr pair(TermPtr left, TermPtr right) {
    return std::make_shared<Term>(Term::Pair{std::move(left), std::move(right)});
}

TermPtr proj(int index, TermPtr body) {
    assert(index == 1 || index == 2);
    return std::make_shared<Term>(Term::Proj{index, std::move(body)});
}

namespace {

// Replace free occurrences of `name` by the bound variable at `depth`.
TermPtr close_over(const TermPtr& t, const Name& name, int depth) {
    if (const auto* v = as_fvar(t)) {
        return v->name == name ? bvar(depth) : t;
    }
    if (as_bvar(t)) return t;
    if (const auto* a = as_abs(t)) {
        TermPtr body = close_over(a->body, name, depth + 1);
        return body == a->body ? t : abs_raw(a->hint, a->annot, body);
    }
    if (const auto* ap = as_app(t)) {
        TermPtr fn = close_over(ap->fn, name, depth);
        TermPtr arg = close_over(ap->arg, name, depth);
        return (fn == ap->fn && arg == ap->arg) ? t : app(fn, arg);
    }
    if (const auto* p = as_pair(t)) {
        TermPtr l = close_over(p->left, name, depth);
        TermPtr r = close_over(p->right, name, depth);
        return (l == p->left && r == p->right) ? t : pair(l, r);
    }
    const auto* pr = as_proj(t);
    TermPtr body = close_over(pr->body, name, depth);
    return body == pr->body ? t : proj(pr->index, body);
}

}  // namespace

TermPtr abs(const Name& binder, TermPtr body) {
    return abs_raw(binder, nullptr, close_over(body, binder, 0));
}

TermPtr abs(const Name& binder, TypePtr annot, TermPtr body) {
    return abs_raw(binder, std::move(annot), close_over(body, binder, 0));
}

const Term::BVar* as_bvar(const TermPtr& t) { return std::get_if<Term::BVar>(&t->node()); }
const Term::FVar* as_fvar(const TermPtr& t) { return std::get_if<Term::FVar>(&t->node()); }
const Term::Abs* as_abs(const TermPtr& t) { return std::get_if<Term::Abs>(&t->node()); }
const Term::App* as_app(const TermPtr& t) { return std::get_if<Term::App>(&t->node()); }
const Term::Pair* as_pair(const TermPtr& t) { return std::get_if<Term::Pair>(&t->node()); }
const Term::Proj* as_proj(const TermPtr& t) { return std::get_if<Term::Proj>(&t->node()); }

// ---------------------------------------------------------------------------
// Predicates and measures
// ---------------------------------------------------------------------------

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (const auto* x = as_bvar(a)) {
        const auto* y = as_bvar(b);
        return y && x->index == y->index;
    }
    if (const auto* x = as_fvar(a)) {
        const auto* y = as_fvar(b);
        return y && x->name == y->name;
    }
    if (const auto* x = as_abs(a)) {
        const auto* y = as_abs(b);
        if (!y) return false;
        if ((x->annot == nullptr) != (y->annot == nullptr)) return false;
        if (x->annot && !type_eq(x->annot, y->annot)) return false;
        return alpha_eq(x->body, y->body);
    }
    if (const auto* x = as_app(a)) {
        const auto* y = as_app(b);
        return y && alpha_eq(x->fn, y->fn) && alpha_eq(x->arg, y->arg);
    }
    if (const auto* x = as_pair(a)) {
        const auto* y = as_pair(b);
        return y && alpha_eq(x->left, y->left) && alpha_eq(x->right, y->right);
    }
    const auto* x = as_proj(a);
    const auto* y = as_proj(b);
    return y && x->index == y->index && alpha_eq(x->body, y->body);
}

std::size_t term_size(const TermPtr& t) {
    if (as_bvar(t) || as_fvar(t)) return 1;
    if (const auto* a = as_abs(t)) return 1 + term_size(a->body);
    if (const auto* ap = as_app(t)) return 1 + term_size(ap->fn) + term_size(ap->arg);
    if (const auto* p = as_pair(t)) return 1 + term_size(p->left) + term_size(p->right);
    return 1 + term_size(as_proj(t)->body);
}

std::set<Name> free_vars(const TermPtr& t) {
    std::set<Name> out;
    std::function<void(const TermPtr&)> go = [&](const TermPtr& u) {
        if (const auto* v = as_fvar(u)) out.insert(v->name);
        else if (const auto* a = as_abs(u)) go(a->body);
        else if (const auto* ap = as_app(u)) { go(ap->fn); go(ap->arg); }
        else if (const auto* p = as_pair(u)) { go(p->left); go(p->right); }
        else if (const auto* pr = as_proj(u)) go(pr->body);
    };
    go(t);
    return out;
}

bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

std::size_t occurrences(const TermPtr& t, const Name& x) {
    if (const auto* v = as_fvar(t)) return v->name == x ? 1 : 0;
    if (as_bvar(t)) return 0;
    if (const auto* a = as_abs(t)) return occurrences(a->body, x);
    if (const auto* ap = as_app(t)) return occurrences(ap->fn, x) + occurrences(ap->arg, x);
    if (const auto* p = as_pair(t)) return occurrences(p->left, x) + occurrences(p->right, x);
    return occurrences(as_proj(t)->body, x);
}

bool is_value(const TermPtr& t) {
    return as_bvar(t) || as_fvar(t) || as_abs(t) || as_pair(t);
}

bool is_neutral(const TermPtr& t) {
    return as_bvar(t) || as_fvar(t) || as_app(t) || as_proj(t);
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

TermPtr shift_indices(const TermPtr& t, int by, int cutoff) {
    if (by == 0) return t;
    if (const auto* v = as_bvar(t)) {
        return v->index >= cutoff ? bvar(v->index + by) : t;
    }
    if (as_fvar(t)) return t;
    if (const auto* a = as_abs(t)) {
        TermPtr body = shift_indices(a->body, by, cutoff + 1);
        return body == a->body ? t : abs_raw(a->hint, a->annot, body);
    }
    if (const auto* ap = as_app(t)) {
        TermPtr fn = shift_indices(ap->fn, by, cutoff);
        TermPtr arg = shift_indices(ap->arg, by, cutoff);
        return (fn == ap->fn && arg == ap->arg) ? t : app(fn, arg);
    }
    if (const auto* p = as_pair(t)) {
        TermPtr l = shift_indices(p->left, by, cutoff);
        TermPtr r = shift_indices(p->right, by, cutoff);
        return (l == p->left && r == p->right) ? t : pair(l, r);
    }
    const auto* pr = as_proj(t);
    TermPtr body = shift_indices(pr->body, by, cutoff);
    return body == pr->body ? t : proj(pr->index, body);
}

namespace {

TermPtr open_at(const TermPtr& t, const TermPtr& arg, int depth) {
    if (const auto* v = as_bvar(t)) {
        if (v->index == depth) return shift_indices(arg, depth, 0);
        if (v->index > depth) return bvar(v->index - 1);
        return t;
    }
    if (as_fvar(t)) return t;
    if (const auto* a = as_abs(t)) {
        return abs_raw(a->hint, a->annot, open_at(a->body, arg, depth + 1));
    }
    if (const auto* ap = as_app(t)) {
        return app(open_at(ap->fn, arg, depth), open_at(ap->arg, arg, depth));
    }
    if (const auto* p = as_pair(t)) {
        return pair(open_at(p->left, arg, depth), open_at(p->right, arg, depth));
    }
    const auto* pr = as_proj(t);
    return proj(pr->index, open_at(pr->body, arg, depth));
}

}  // namespace

TermPtr open_bound(const TermPtr& body, const TermPtr& arg) {
    return open_at(body, arg, 0);
}

TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& s) {
    // s has no dangling indices, and bound variables are indices, so no
    // renaming is ever needed.
    if (const auto* v = as_fvar(t)) return v->name == x ? s : t;
    if (as_bvar(t)) return t;
    if (const auto* a = as_abs(t)) {
        TermPtr body = subst(a->body, x, s);
        return body == a->body ? t : abs_raw(a->hint, a->annot, body);
    }
    if (const auto* ap = as_app(t)) {
        TermPtr fn = subst(ap->fn, x, s);
        TermPtr arg = subst(ap->arg, x, s);
        return (fn == ap->fn && arg == ap->arg) ? t : app(fn, arg);
    }
    if (const auto* p = as_pair(t)) {
        TermPtr l = subst(p->left, x, s);
        TermPtr r = subst(p->right, x, s);
        return (l == p->left && r == p->right) ? t : pair(l, r);
    }
    const auto* pr = as_proj(t);
    TermPtr body = subst(pr->body, x, s);
    return body == pr->body ? t : proj(pr->index, body);
}

// ---------------------------------------------------------------------------
// Canonical keys
// ---------------------------------------------------------------------------

std::string term_key(const TermPtr& t) {
    std::string out;
    std::function<void(const TermPtr&)> go = [&](const TermPtr& u) {
        if (const auto* v = as_bvar(u)) {
            out += 'b';
            out += std::to_string(v->index);
            out += ';';
        } else if (const auto* v = as_fvar(u)) {
            out += 'v';
            out += v->name;
            out += ';';
        } else if (const auto* a = as_abs(u)) {
            out += 'l';
            if (a->annot) {
                out += '[';
                out += type_key(a->annot);
                out += ']';
            }
            go(a->body);
        } else if (const auto* ap = as_app(u)) {
            out += '@';
            go(ap->fn);
            go(ap->arg);
        } else if (const auto* p = as_pair(u)) {
            out += 'p';
            go(p->left);
            go(p->right);
        } else {
            const auto* pr = as_proj(u);
            out += pr->index == 1 ? '1' : '2';
            go(pr->body);
        }
    };
    go(t);
    return out;
}

// ---------------------------------------------------------------------------
// Fresh names
// ---------------------------------------------------------------------------

namespace {

bool valid_ident(const Name& n) {
    if (n.empty() || n == "p1" || n == "p2") return false;
    if (!std::islower(static_cast<unsigned char>(n[0]))) return false;
    for (char c : n) {
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Name fresh_name(const Name& hint, const std::set<Name>& avoid) {
    Name base = valid_ident(hint) ? hint : Name("x");
    if (!avoid.count(base)) return base;
    for (int i = 1;; ++i) {
        Name candidate = base + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}

// ---------------------------------------------------------------------------
// Positions
// ---------------------------------------------------------------------------

TermPtr subterm_at(const TermPtr& t, const Position& pos) {
    TermPtr cur = t;
    for (PathStep step : pos) {
        if (!cur) return nullptr;
        switch (step) {
            case PathStep::AbsBody: {
                const auto* a = as_abs(cur);
                cur = a ? a->body : nullptr;
                break;
            }
            case PathStep::AppFn: {
                const auto* ap = as_app(cur);
                cur = ap ? ap->fn : nullptr;
                break;
            }
            case PathStep::AppArg: {
                const auto* ap = as_app(cur);
                cur = ap ? ap->arg : nullptr;
                break;
            }
            case PathStep::PairL: {
                const auto* p = as_pair(cur);
                cur = p ? p->left : nullptr;
                break;
            }
            case PathStep::PairR: {
                const auto* p = as_pair(cur);
                cur = p ? p->right : nullptr;
                break;
            }
            case PathStep::ProjBody: {
                const auto* pr = as_proj(cur);
                cur = pr ? pr->body : nullptr;
                break;
            }
        }
    }
    return cur;
}

TermPtr replace_at(const TermPtr& t, const Position& pos, const TermPtr& s) {
    std::function<TermPtr(const TermPtr&, std::size_t)> go =
        [&](const TermPtr& cur, std::size_t i) -> TermPtr {
        if (i == pos.size()) return s;
        switch (pos[i]) {
            case PathStep::AbsBody: {
                const auto* a = as_abs(cur);
                if (!a) return nullptr;
                TermPtr body = go(a->body, i + 1);
                return body ? abs_raw(a->hint, a->annot, body) : nullptr;
            }
            case PathStep::AppFn: {
                const auto* ap = as_app(cur);
                if (!ap) return nullptr;
                TermPtr fn = go(ap->fn, i + 1);
                return fn ? app(fn, ap->arg) : nullptr;
            }
            case PathStep::AppArg: {
                const auto* ap = as_app(cur);
                if (!ap) return nullptr;
                TermPtr arg = go(ap->arg, i + 1);
                return arg ? app(ap->fn, arg) : nullptr;
            }
            case PathStep::PairL: {
                const auto* p = as_pair(cur);
                if (!p) return nullptr;
                TermPtr l = go(p->left, i + 1);
                return l ? pair(l, p->right) : nullptr;
            }
            case PathStep::PairR: {
                const auto* p = as_pair(cur);
                if (!p) return nullptr;
                TermPtr r = go(p->right, i + 1);
                return r ? pair(p->left, r) : nullptr;
            }
            case PathStep::ProjBody: {
                const auto* pr = as_proj(cur);
                if (!pr) return nullptr;
                TermPtr body = go(pr->body, i + 1);
                return body ? proj(pr->index, body) : nullptr;
            }
        }
        return nullptr;
    };
    return go(t, 0);
}

std::vector<Position> occurrence_positions(const TermPtr& t, const Name& x) {
    std::vector<Position> out;
    Position path;
    std::function<void(const TermPtr&)> go = [&](const TermPtr& u) {
        if (const auto* v = as_fvar(u)) {
            if (v->name == x) out.push_back(path);
            return;
        }
        if (as_bvar(u)) return;
        if (const auto* a = as_abs(u)) {
            path.push_back(PathStep::AbsBody);
            go(a->body);
            path.pop_back();
        } else if (const auto* ap = as_app(u)) {
            path.push_back(PathStep::AppFn);
            go(ap->fn);
            path.back() = PathStep::AppArg;
            go(ap->arg);
            path.pop_back();
        } else if (const auto* p = as_pair(u)) {
            path.push_back(PathStep::PairL);
            go(p->left);
            path.back() = PathStep::PairR;
            go(p->right);
            path.pop_back();
        } else {
            path.push_back(PathStep::ProjBody);
            go(as_proj(u)->body);
            path.pop_back();
        }
    };
    go(t);
    return out;
}

std::string position_to_string(const Position& pos) {
    if (pos.empty()) return "root";
    std::string out;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (i) out += '.';
        switch (pos[i]) {
            case PathStep::AbsBody: out += "body"; break;
            case PathStep::AppFn: out += "fn"; break;
            case PathStep::AppArg: out += "arg"; break;
            case PathStep::PairL: out += "left"; break;
            case PathStep::PairR: out += "right"; break;
            case PathStep::ProjBody: out += "body"; break;
        }
    }
    return out;
}

}  // namespace distlam
