#include "zps/exact.hpp"

#include <gmp.h>
#include <limits>
#include <stdexcept>
#include <vector>

namespace zps {

Count pow_count(const Count& base, unsigned long exp) {
    Count r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Count pow_count(std::uint64_t base, unsigned long exp) {
    Count r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
    Count v = pow_count(base, exp);
    if (!v.fits_ulong_p())
        throw std::overflow_error("power does not fit a machine word");
    return mpz_get_ui(v.get_mpz_t());
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % r);
}

static std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t r) {
    std::uint64_t acc = 1 % r;
    a %= r;
    while (e) {
        if (e & 1) acc = mulmod_u64(acc, a, r);
        a = mulmod_u64(a, a, r);
        e >>= 1;
    }
    return acc;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    // Miller-Rabin with a base set that is deterministic for all 64-bit n.
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t r) {
    // extended Euclid on signed 128-bit to dodge sign headaches
    __int128 t = 0, new_t = 1;
    __int128 rem = r, new_rem = a % r;
    while (new_rem != 0) {
        __int128 q = rem / new_rem;
        __int128 tmp = t - q * new_t;
        t = new_t; new_t = tmp;
        tmp = rem - q * new_rem;
        rem = new_rem; new_rem = tmp;
    }
    if (rem != 1)
        throw std::domain_error("element not invertible modulo r");
    if (t < 0) t += r;
    return static_cast<std::uint64_t>(t);
}

std::string fraction_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string decimal_string(const Rational& q, int significant_digits) {
    if (significant_digits < 1) significant_digits = 1;
    // enough bits for the requested digits plus slack
    auto prec = static_cast<mp_bitcnt_t>(significant_digits * 4 + 32);
    mpf_class f(q, prec);
    std::vector<char> buf(static_cast<std::size_t>(significant_digits) + 64);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant_digits, f.get_mpf_t());
    return std::string(buf.data());
}

} // namespace zps
