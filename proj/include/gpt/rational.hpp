#pragma once

#include <string>

#include <boost/multiprecision/gmp.hpp>

#include "gpt/errors.hpp"

namespace gpt {

/// Arbitrary-precision rational. All decision procedures in this library run
/// on exact rationals; no floating point enters any comparison.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q" or a plain integer string (optionally signed).
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ParseError("malformed rational: " + text);
  bool seen_slash = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (c == '/') {
      if (seen_slash || i == start || i + 1 == text.size())
        throw ParseError("malformed rational: " + text);
      seen_slash = true;
      continue;
    }
    if (c < '0' || c > '9') throw ParseError("malformed rational: " + text);
  }
  Rational r(text);
  if (seen_slash && denominator(r) == 0)
    throw ParseError("zero denominator: " + text);
  return r;
}

/// Canonical form: integer when the denominator is 1, otherwise "p/q" reduced.
inline std::string to_string(const Rational& r) {
  return r.str();
}

}  // namespace gpt
