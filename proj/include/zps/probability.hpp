#ifndef ZPS_PROBABILITY_HPP
#define ZPS_PROBABILITY_HPP

#include "zps/exact.hpp"
#include "zps/matrix.hpp"
#include "zps/recursion.hpp"

#include <vector>

namespace zps {

// Triangular sum k + (k+1) + ... + n, with the empty case tri(k-1, k) = 0.
long tri(long n, long k = 1);

// prod_{u=k}^{n} (p^u - 1); empty product for n < k.
Count factor_product(long n, long k, std::uint64_t p);

// Sum of the square-matrix counts over j = 0..s-1 in closed form:
// p^{s(n^2-n) - tri(n-1)} * factor_product(n+s-1, s).
Count sum_below_s(int n, std::uint64_t p, int s);

// count_j_eq_s(n, n, p, s) / p^{s n^2} as an exact rational, via the
// alternating 1/p-expansion.
Rational normalized_j_eq_s(int n, std::uint64_t p, int s);

// Exact probability that gcd(det A, p^s) equals the number of solutions of
// Ax = 0 for a uniform n x n matrix A over Z_{p^s}.
Rational prob_gcd_correct(int n, std::uint64_t p, int s);

// (1 - p^{-s-3}) - prob_gcd_correct(n, p, s); n >= 2.
Rational asymptotic_residual(int n, std::uint64_t p, int s);

// Checks prod_{u=k}^n (p^u-1) against its alternating binomial expansion.
bool factor_product_expansion_ok(long n, long k, std::uint64_t p);

// Checks one instance of the q-Vandermonde convolution used by the
// at-precision probability expansion.
bool vandermonde_instance_ok(int n, int s, std::uint64_t p);

// Counts for a composite modulus N = prod p_i^{s_i}: the count at kernel
// size prod p_i^{j_i} is the product of the per-factor counts. Lookups are
// lazy; the product table is never materialized.
class CrtSystem {
public:
    // All factors must share the table shape (n, m) and have pairwise
    // distinct primes; throws DuplicatePrime / std::invalid_argument.
    explicit CrtSystem(std::vector<CountTable> factor_tables);

    int rows() const { return n_; }
    int cols() const { return m_; }
    std::size_t factors() const { return tables_.size(); }
    const CountTable& table(std::size_t i) const { return tables_[i]; }

    Count modulus() const;                                 // prod p_i^{s_i}
    Count solution_count(const std::vector<long>& js) const; // prod p_i^{j_i}
    Count count(const std::vector<long>& js) const;        // prod table_i[j_i]

private:
    std::vector<CountTable> tables_;
    int n_ = 0;
    int m_ = 0;
};

} // namespace zps

#endif
