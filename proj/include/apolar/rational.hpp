#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace apolar {

/// Exact rational number. GMP keeps results of arithmetic canonical
/// (lowest terms, positive denominator, zero as 0/1).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "n" or "n/m"; throws InputError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace apolar
