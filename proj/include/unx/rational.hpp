#ifndef UNX_RATIONAL_HPP
#define UNX_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "unx/errors.hpp"

namespace unx {

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator (mpq_class canonical form).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat_of(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "num" or "num/den" with optional leading '-'.
Rat rat_from_string(const std::string& s);

/// Canonical printing: "num" when den == 1, else "num/den".
std::string rat_to_string(const Rat& r);

/// True when r is the square of a rational.
bool rat_is_square(const Rat& r);

long binom(int n, int k);

}  // namespace unx

#endif
