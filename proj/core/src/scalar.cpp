#include "chiral/scalar.hpp"

#include "chiral/errors.hpp"

namespace chiral {

Integer factorial(unsigned long k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

Scalar binomial(long top, unsigned long k) {
  Scalar r = 1;
  for (unsigned long i = 0; i < k; ++i) {
    r *= Scalar(top - static_cast<long>(i));
    r /= Scalar(static_cast<long>(i + 1));
  }
  return r;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

Scalar parse_scalar(const std::string& text) {
  Scalar q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw ParseError("invalid rational literal '" + text + "'", 0);
  }
  q.canonicalize();
  return q;
}

}  // namespace chiral
