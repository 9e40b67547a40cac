#pragma once

#include <string>

#include "distlam/syntax.hpp"

namespace distlam {

// Concrete syntax output. pretty(t) reparses to a term alpha-equivalent to t;
// pretty_type(a) reparses to a syntactically equal type. Parentheses are
// minimal, except that nested conjunctions are always written explicitly
// because `&` association is semantically significant.
std::string pretty(const TermPtr& t);
std::string pretty_type(const TypePtr& t);

}  // namespace distlam
