#ifndef ZPS_QBINOM_HPP
#define ZPS_QBINOM_HPP

#include "zps/exact.hpp"

namespace zps {

// Gaussian binomial coefficient evaluated at an integer q >= 2.
// k = 0 gives 1, k > n gives 0. Computed by the product formula with an
// exact division after every factor pair; a nonzero remainder would mean a
// bug and throws IntegralityViolation.
Count qbinom(long n, long k, const Count& q);

// qbinom(n, k, p) / p^{k(n-k)}, i.e. the coefficient evaluated at 1/p.
Rational qbinom_at_inverse(long n, long k, std::uint64_t p);

// Number of n-tuples over [1, p^t] with at least one coordinate coprime to
// p^t: 1 for t = 0, otherwise p^{tn} - p^{(t-1)n}. For n = 1 this is the
// classical Euler phi of p^t.
Count gen_phi(long n, std::uint64_t p, long t);

} // namespace zps

#endif
