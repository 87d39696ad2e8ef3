#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace modblob {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "-0.125".
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

/// n/d in lowest terms.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace modblob
