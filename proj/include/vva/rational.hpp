#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace vva {

// GMP canonicalizes every arithmetic result. Values built from a separate
// numerator and denominator must go through ratio().
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// num / den in lowest terms. den must be nonzero.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p/q", "p", and an optional leading sign. Throws vva::Error
// (ErrorCode::ParseError) on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace vva
