#pragma once

#include <gmpxx.h>

#include <string>

namespace chiral {

/// Exact rational scalar. GMP keeps mpq_class values in lowest terms with a
/// positive denominator after every arithmetic operation.
using Scalar = mpq_class;
using Integer = mpz_class;

inline Scalar make_scalar(long num, long den = 1) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

Integer factorial(unsigned long k);
Scalar binomial(long top, unsigned long k);  // generalized: top may be negative

std::string to_string(const Scalar& q);
Scalar parse_scalar(const std::string& text);

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

}  // namespace chiral
