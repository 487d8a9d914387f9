#ifndef JETCALC_RATIONAL_HPP
#define JETCALC_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace jetcalc {

/// Exact rational scalar: arbitrary precision, always reduced, denominator > 0.
using Q = mpq_class;
using Z = mpz_class;

inline Q make_q(long num, long den = 1) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Q& a) { return sgn(a) == 0; }

inline Z factorial(unsigned k) {
  Z r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

inline Z binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Q q_pow(const Q& a, unsigned e) {
  Q r = 1;
  for (unsigned i = 0; i < e; ++i) r *= a;
  return r;
}

inline std::string to_string(const Q& a) { return a.get_str(); }

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed input.
Q parse_rational(const std::string& s);

}  // namespace jetcalc

#endif
