#ifndef CTT_BIGINT_HPP
#define CTT_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace ctt {

// Exact arithmetic for all counting formulas; (n^d)! overflows any fixed
// width almost immediately.
using bigint = boost::multiprecision::cpp_int;

inline bigint big_pow(bigint base, unsigned exp) {
  bigint r = 1;
  while (exp > 0) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline bigint big_factorial(unsigned n) {
  bigint r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// C(n, k) via the multiplicative form, exact at every intermediate step.
inline bigint big_binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  bigint r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // divides exactly: r is C(n-k+i, i) here
  }
  return r;
}

// Multinomial coefficient (groups*each)! / (each!)^groups as a product of
// binomials, staying in integer arithmetic throughout.
inline bigint big_multinomial_equal_groups(unsigned groups, unsigned each) {
  bigint r = 1;
  unsigned placed = 0;
  for (unsigned g = 0; g < groups; ++g) {
    placed += each;
    r *= big_binomial(placed, each);
  }
  return r;
}

}  // namespace ctt

#endif
