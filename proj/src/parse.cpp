#include "distlam/parse.hpp"

#include <cctype>

namespace distlam {

namespace {

enum class Tok {
    Ident,      // lowercase-initial
    TypeIdent,  // uppercase-initial
    Lambda,
    Dot,
    Colon,
    Comma,
    Arrow,
    Amp,
    LAngle,
    RAngle,
    LParen,
    RParen,
    P1,
    P2,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(const std::string& input) : input_(input) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < input_.size() &&
               std::isspace(static_cast<unsigned char>(input_[pos_]))) {
            ++pos_;
        }
        std::size_t start = pos_;
        if (pos_ >= input_.size()) {
            current_ = {Tok::End, "", {start, start}};
            return;
        }
        char c = input_[pos_];
        auto single = [&](Tok k) {
            ++pos_;
            current_ = {k, std::string(1, c), {start, pos_}};
        };
        switch (c) {
            case '\\': return single(Tok::Lambda);
            case '.': return single(Tok::Dot);
            case ':': return single(Tok::Colon);
            case ',': return single(Tok::Comma);
            case '&': return single(Tok::Amp);
            case '<': return single(Tok::LAngle);
            case '>': return single(Tok::RAngle);
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            case '-':
                if (pos_ + 1 < input_.size() && input_[pos_ + 1] == '>') {
                    pos_ += 2;
                    current_ = {Tok::Arrow, "->", {start, pos_}};
                    return;
                }
                throw ParseError("unexpected character '-'", {start, start + 1});
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < input_.size() &&
                   std::isalnum(static_cast<unsigned char>(input_[pos_]))) {
                ++pos_;
            }
            std::string text = input_.substr(start, pos_ - start);
            Tok kind;
            if (text == "p1") kind = Tok::P1;
            else if (text == "p2") kind = Tok::P2;
            else if (std::isupper(static_cast<unsigned char>(text[0]))) kind = Tok::TypeIdent;
            else kind = Tok::Ident;
            current_ = {kind, std::move(text), {start, pos_}};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'",
                         {start, start + 1});
    }

    const std::string& input_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(const std::string& input) : lex_(input) {}

    TermPtr term() {
        TermPtr t = atom_or_null();
        if (!t) fail("expected a term");
        for (;;) {
            TermPtr arg = atom_or_null();
            if (!arg) return t;
            t = app(t, arg);
        }
    }

    TypePtr type() {
        TypePtr left = conj();
        if (lex_.peek().kind == Tok::Arrow) {
            lex_.take();
            return arrow(left, type());
        }
        return left;
    }

    ContextParse context() {
        ContextParse out;
        if (lex_.peek().kind == Tok::End) return out;
        for (;;) {
            Token name = expect(Tok::Ident, "expected a variable name");
            expect(Tok::Colon, "expected ':'");
            TypePtr ty = type();
            if (out.ctx.lookup(name.text)) {
                out.warnings.push_back("binding of '" + name.text +
                                       "' shadows an earlier one");
            }
            out.ctx.push(name.text, ty);
            if (lex_.peek().kind != Tok::Comma) break;
            lex_.take();
        }
        return out;
    }

    void end() { expect(Tok::End, "expected end of input"); }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, lex_.peek().span);
    }

    Token expect(Tok kind, const std::string& msg) {
        if (lex_.peek().kind != kind) fail(msg);
        return lex_.take();
    }

    TermPtr atom_or_null() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Ident: {
                Token v = lex_.take();
                return var(v.text);
            }
            case Tok::Lambda: {
                lex_.take();
                Token binder = expect(Tok::Ident, "expected a binder name");
                TypePtr annot;
                if (lex_.peek().kind == Tok::Colon) {
                    lex_.take();
                    annot = type();
                }
                expect(Tok::Dot, "expected '.'");
                TermPtr body = term();
                return annot ? abs(binder.text, annot, body)
                             : abs(binder.text, body);
            }
            case Tok::LAngle: {
                lex_.take();
                TermPtr left = term();
                expect(Tok::Comma, "expected ','");
                TermPtr right = term();
                expect(Tok::RAngle, "expected '>'");
                return pair(left, right);
            }
            case Tok::P1:
            case Tok::P2: {
                Token p = lex_.take();
                TermPtr body = atom_or_null();
                if (!body) fail("expected a term after projection");
                return proj(p.kind == Tok::P1 ? 1 : 2, body);
            }
            case Tok::LParen: {
                lex_.take();
                TermPtr inner = term();
                expect(Tok::RParen, "expected ')'");
                return inner;
            }
            default:
                return nullptr;
        }
    }

    TypePtr conj() {
        TypePtr left = tprim();
        if (lex_.peek().kind == Tok::Amp) {
            lex_.take();
            return distlam::conj(left, conj());
        }
        return left;
    }

    TypePtr tprim() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::TypeIdent) {
            Token a = lex_.take();
            return atom(a.text);
        }
        if (t.kind == Tok::LParen) {
            lex_.take();
            TypePtr inner = type();
            expect(Tok::RParen, "expected ')'");
            return inner;
        }
        fail("expected a type");
    }

    Lexer lex_;
};

}  // namespace

TermPtr parse_term(const std::string& text) {
    Parser p(text);
    TermPtr t = p.term();
    p.end();
    return t;
}

TypePtr parse_type(const std::string& text) {
    Parser p(text);
    TypePtr t = p.type();
    p.end();
    return t;
}

ContextParse parse_context(const std::string& text) {
    Parser p(text);
    ContextParse out = p.context();
    p.end();
    return out;
}

}  // namespace distlam
