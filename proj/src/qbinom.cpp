#include "zps/qbinom.hpp"

#include "zps/errors.hpp"

#include <stdexcept>

namespace zps {

Count qbinom(long n, long k, const Count& q) {
    if (n < 0 || k < 0)
        throw std::invalid_argument("qbinom: n and k must be nonnegative");
    if (q < 2)
        throw std::invalid_argument("qbinom: q must be at least 2");
    if (k == 0) return 1;
    if (k > n) return 0;
    if (k > n - k) k = n - k; // symmetry, fewer factors

    // prod_{i=1..k} (q^{n-k+i} - 1) / (q^i - 1); every prefix is itself a
    // Gaussian binomial, so each division is exact.
    Count result = 1;
    Count num_pow = pow_count(q, static_cast<unsigned long>(n - k)); // q^{n-k+i-1}
    Count den_pow = 1;                                               // q^{i-1}
    for (long i = 1; i <= k; ++i) {
        num_pow *= q;
        den_pow *= q;
        result *= num_pow - 1;
        Count rem;
        Count quot;
        mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), result.get_mpz_t(),
                    Count(den_pow - 1).get_mpz_t());
        if (rem != 0)
            throw IntegralityViolation("qbinom: inexact division");
        result = quot;
    }
    return result;
}

Rational qbinom_at_inverse(long n, long k, std::uint64_t p) {
    if (k > n) return Rational(0);
    Count numer = qbinom(n, k, Count(p));
    Count denom = pow_count(p, static_cast<unsigned long>(k * (n - k)));
    Rational r(numer, denom);
    r.canonicalize();
    return r;
}

Count gen_phi(long n, std::uint64_t p, long t) {
    if (n < 1)
        throw std::invalid_argument("gen_phi: n must be positive");
    if (t < 0)
        throw std::invalid_argument("gen_phi: t must be nonnegative");
    if (t == 0) return 1;
    return pow_count(p, static_cast<unsigned long>(t * n)) -
           pow_count(p, static_cast<unsigned long>((t - 1) * n));
}

} // namespace zps
