#include "distlam/pretty.hpp"

#include <functional>
#include <vector>

namespace distlam {

namespace {

// & binds tighter than ->; both right-associative in the grammar, but the
// printer parenthesizes every non-atomic conjunct.
void show_type(const TypePtr& t, std::string& out);

void show_conj_operand(const TypePtr& t, std::string& out) {
    if (const auto* a = as_atom(t)) {
        out += a->name;
    } else {
        out += '(';
        show_type(t, out);
        out += ')';
    }
}

void show_arrow_left(const TypePtr& t, std::string& out) {
    if (as_arrow(t)) {
        out += '(';
        show_type(t, out);
        out += ')';
    } else {
        show_type(t, out);
    }
}

void show_type(const TypePtr& t, std::string& out) {
    if (const auto* a = as_atom(t)) {
        out += a->name;
    } else if (const auto* ar = as_arrow(t)) {
        show_arrow_left(ar->dom, out);
        out += " -> ";
        show_type(ar->cod, out);
    } else {
        const auto* c = as_conj(t);
        show_conj_operand(c->left, out);
        out += " & ";
        show_conj_operand(c->right, out);
    }
}

struct TermPrinter {
    std::vector<Name> binders;  // innermost last

    Name binder_name(const Term::Abs& a, const TermPtr& body) {
        std::set<Name> avoid = free_vars(body);
        avoid.insert(binders.begin(), binders.end());
        return fresh_name(a.hint, avoid);
    }

    // Precedence levels: term (lambda scope), application, atom.
    void term(const TermPtr& t, std::string& out) {
        if (const auto* a = as_abs(t)) {
            Name x = binder_name(*a, a->body);
            out += '\\';
            out += x;
            if (a->annot) {
                out += ':';
                show_type(a->annot, out);
            }
            out += ". ";
            binders.push_back(x);
            term(a->body, out);
            binders.pop_back();
            return;
        }
        application(t, out);
    }

    void application(const TermPtr& t, std::string& out) {
        if (const auto* ap = as_app(t)) {
            application(ap->fn, out);
            out += ' ';
            atom_level(ap->arg, out);
            return;
        }
        atom_level(t, out);
    }

    void atom_level(const TermPtr& t, std::string& out) {
        if (const auto* v = as_bvar(t)) {
            // Index into the binder stack; dangling indices should not occur
            // in complete terms but print recognizably if they do.
            int i = static_cast<int>(binders.size()) - 1 - v->index;
            if (i >= 0) out += binders[static_cast<std::size_t>(i)];
            else out += "?" + std::to_string(v->index);
            return;
        }
        if (const auto* v = as_fvar(t)) {
            out += v->name;
            return;
        }
        if (const auto* p = as_pair(t)) {
            out += '<';
            term(p->left, out);
            out += ", ";
            term(p->right, out);
            out += '>';
            return;
        }
        if (const auto* pr = as_proj(t)) {
            out += pr->index == 1 ? "p1 " : "p2 ";
            atom_level(pr->body, out);
            return;
        }
        out += '(';
        term(t, out);
        out += ')';
    }
};

}  // namespace

std::string pretty(const TermPtr& t) {
    std::string out;
    TermPrinter printer;
    printer.term(t, out);
    return out;
}

std::string pretty_type(const TypePtr& t) {
    std::string out;
    show_type(t, out);
    return out;
}

}  // namespace distlam
