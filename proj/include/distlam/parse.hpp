#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "distlam/syntax.hpp"
#include "distlam/types.hpp"

// Concrete syntax (ASCII, UTF-8 input):
//
//   term t  ::= atom | t atom                      application, left-assoc
//   atom    ::= ident
//             | "\" ident [":" type] "." t         body extends right
//             | "<" t "," t ">"
//             | "p1" atom | "p2" atom
//             | "(" t ")"
//   type    ::= conj [ "->" type ]                 "->" right-assoc
//   conj    ::= tprim [ "&" conj ]                 "&" tighter, right-assoc
//   tprim   ::= TYPEIDENT | "(" type ")"
//   context ::= [ ident ":" type { "," ident ":" type } ]
//
// Term identifiers start lowercase, type atoms start uppercase; "p1" and
// "p2" are reserved. This grammar is the exchange format used by the CLI,
// the test fixtures and the suite reports.

namespace distlam {

struct SourceSpan {
    std::size_t start = 0;  // byte offsets, start <= end <= input length
    std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, SourceSpan span)
        : std::runtime_error(message + " at " + std::to_string(span.start) +
                             ".." + std::to_string(span.end)),
          message_(std::move(message)),
          span_(span) {}

    const std::string& message() const { return message_; }
    SourceSpan span() const { return span_; }

private:
    std::string message_;
    SourceSpan span_;
};

TermPtr parse_term(const std::string& text);
TypePtr parse_type(const std::string& text);

struct ContextParse {
    TypingContext ctx;
    std::vector<std::string> warnings;  // e.g. shadowed duplicate bindings
};

ContextParse parse_context(const std::string& text);

}  // namespace distlam
