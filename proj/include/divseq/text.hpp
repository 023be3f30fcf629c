#pragma once

// Text syntax for polynomials and rational functions in t.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' ['-'] digits)?
//   primary := digits | 't' | '(' expr ')'
//
// Whitespace is ignored. Printing emits descending powers with reduced
// coefficients, e.g. "3/2*t^4 - t + 5", and "(<num>)/(<den>)" for proper
// fractions; printed text always parses back to the same value.

#include <string>
#include <string_view>

#include "divseq/polynomial.hpp"
#include "divseq/ratfun.hpp"

namespace divseq {

/// Throws ParseError; `line` and `column_offset` locate the text inside a
/// larger document for error messages.
RationalFunction parse_rational_function(std::string_view text, int line = 1, int column_offset = 0);

/// Like parse_rational_function but rejects proper fractions.
Polynomial parse_polynomial(std::string_view text, int line = 1, int column_offset = 0);

std::string to_string(const Polynomial& p);
std::string to_string(const RationalFunction& f);

}  // namespace divseq
