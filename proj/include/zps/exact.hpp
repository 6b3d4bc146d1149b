#ifndef ZPS_EXACT_HPP
#define ZPS_EXACT_HPP

#include <gmpxx.h>
#include <cstdint>
#include <string>

namespace zps {

// All counts are exact nonnegative integers; they outgrow every fixed-width
// type almost immediately, so they live in GMP.
using Count = mpz_class;

// Exact fraction, always canonicalized (lowest terms, positive denominator).
using Rational = mpq_class;

// base^exp as an exact integer.
Count pow_count(const Count& base, unsigned long exp);
Count pow_count(std::uint64_t base, unsigned long exp);

// p^e for word-sized results; throws std::overflow_error if it does not fit.
std::uint64_t pow_u64(std::uint64_t base, unsigned exp);

// Deterministic Miller-Rabin, valid for the full uint64 range.
bool is_prime_u64(std::uint64_t n);

// (a*b) mod r without overflow.
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t r);

// Inverse of a modulo r; a must be coprime to r.
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t r);

// Presentation-only decimal rendering with the given number of significant
// digits; the exact value is the fraction itself.
std::string decimal_string(const Rational& q, int significant_digits = 12);

// "num/den", or just "num" when the denominator is 1.
std::string fraction_string(const Rational& q);

} // namespace zps

#endif
