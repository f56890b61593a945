#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parabolic {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws Error on malformed input.
Rational parse_rational(std::string_view text);

/// Comma-separated list of rationals; an empty string gives an empty list.
RationalVector parse_rational_list(std::string_view text);

/// Canonical "p/q" with q > 0 and gcd(p, q) = 1. Integers keep the "/1".
std::string to_string(const Rational& value);

Integer lcm_of_denominators(std::span<const Rational> values);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

inline Rational make_rational(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace parabolic
