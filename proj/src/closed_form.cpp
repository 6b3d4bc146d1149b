#include "zps/closed_form.hpp"

#include "zps/errors.hpp"
#include "zps/qbinom.hpp"

#include <stdexcept>

namespace zps {

namespace {

void require_shape(int n, int m, const char* who) {
    if (m < 1)
        throw ShapeUnsupported(std::string(who) + ": needs m >= 1");
    if (n < m)
        throw ShapeUnsupported(std::string(who) + ": needs n >= m");
}

void require_s(int s, const char* who) {
    if (s < 1)
        throw RangeUnsupported(std::string(who) + ": needs s >= 1");
}

} // namespace

Count count_unique(int n, int m, std::uint64_t p, int s) {
    require_shape(n, m, "count_unique");
    require_s(s, "count_unique");
    Count result = pow_count(p, static_cast<unsigned long>(s) *
                                    static_cast<unsigned long>(m) * (m - 1) / 2);
    for (int u = n - m + 1; u <= n; ++u)
        result *= gen_phi(u, p, s);
    return result;
}

Count count_unique_pform(int n, int m, std::uint64_t p, int s) {
    require_shape(n, m, "count_unique_pform");
    require_s(s, "count_unique_pform");
    if (s != 1 && n != m)
        throw RangeUnsupported("count_unique_pform: valid for s = 1 or n = m only");
    Count result = pow_count(p, static_cast<unsigned long>(s - 1) *
                                        static_cast<unsigned long>(n) * (n + 1) / 2 +
                                    static_cast<unsigned long>(s) *
                                        static_cast<unsigned long>(m) * (m - 1) / 2);
    for (int u = n - m + 1; u <= n; ++u)
        result *= pow_count(p, static_cast<unsigned long>(u)) - 1;
    return result;
}

Count count_j_lt_s(int n, int m, std::uint64_t p, int s, long j) {
    require_shape(n, m, "count_j_lt_s");
    require_s(s, "count_j_lt_s");
    if (j < 0 || j >= s)
        throw RangeUnsupported("count_j_lt_s: needs 0 <= j < s");
    Count result = gen_phi(n - m + 1, p, s - j);
    for (int u = n - m + 2; u <= n; ++u)
        result *= gen_phi(u, p, s);
    const unsigned long exp = static_cast<unsigned long>(s) *
                                  static_cast<unsigned long>(m) * (m - 1) / 2 -
                              static_cast<unsigned long>(j) * (m - 1);
    result *= pow_count(p, exp);
    result *= qbinom(m + j - 1, j, Count(p));
    return result;
}

Count phi_product(int n, int m, std::uint64_t p, int s, int k) {
    require_shape(n, m, "phi_product");
    require_s(s, "phi_product");
    if (k < 0 || k > m - 1)
        throw RangeUnsupported("phi_product: needs 0 <= k <= m-1");
    Count result = gen_phi(n - (m - 1), p, m - 1 - k);
    for (int u = k; u <= m - 2; ++u)
        result *= gen_phi(n - u, p, s - 1);
    for (int v = 0; v <= k - 1; ++v)
        result *= gen_phi(n - v, p, s);
    return result;
}

Count count_j_eq_s(int n, int m, std::uint64_t p, int s) {
    require_shape(n, m, "count_j_eq_s");
    require_s(s, "count_j_eq_s");
    Rational total(0);
    const Count q(p);
    for (int k = 0; k <= m - 1; ++k) {
        Count numer = phi_product(n, m, p, s, k);
        numer *= qbinom(m, k, q);
        numer *= qbinom(s - 1, m - 1 - k, q);
        if (numer == 0) continue;
        // a(m,k)*s + b(m,k); b can be negative, so keep the term rational
        const long a = static_cast<long>(m) * (m - 1) / 2 - (m - 1 - k);
        const long b = static_cast<long>(m - k) * (m - 3 * k - 1) / 2;
        const long exp = a * s + b;
        Rational term(numer);
        if (exp >= 0)
            term *= Rational(pow_count(p, static_cast<unsigned long>(exp)));
        else
            term /= Rational(pow_count(p, static_cast<unsigned long>(-exp)));
        total += term;
    }
    total.canonicalize();
    if (total.get_den() != 1)
        throw IntegralityViolation("count_j_eq_s: sum is not an integer: " +
                                   fraction_string(total));
    if (total < 0)
        throw IntegralityViolation("count_j_eq_s: sum is negative");
    return total.get_num();
}

Count count_col(int n, std::uint64_t p, int s, long j) {
    if (n < 1)
        throw ShapeUnsupported("count_col: needs n >= 1");
    require_s(s, "count_col");
    if (j < 0 || j > s) return 0;
    return gen_phi(n, p, s - j);
}

Count coprime_count_two_cols(int n, std::uint64_t p, int s, long j) {
    if (n < 2)
        throw ShapeUnsupported("coprime_count_two_cols: needs n >= 2");
    require_s(s, "coprime_count_two_cols");
    if (j < 0 || j > s) return 0;
    if (j == 0)
        return gen_phi(n, p, s) * gen_phi(n - 1, p, s) *
               pow_count(p, static_cast<unsigned long>(s));
    Count lift = pow_count(p, static_cast<unsigned long>(s)) +
                 pow_count(p, static_cast<unsigned long>(s - 1));
    return gen_phi(n, p, s) * gen_phi(n - 1, p, s - j) * lift;
}

Count count_two_cols(int n, std::uint64_t p, int s, long j) {
    if (n < 2)
        throw ShapeUnsupported("count_two_cols: needs n >= 2");
    require_s(s, "count_two_cols");
    if (j >= s)
        throw RangeUnsupported("count_two_cols: needs j < s");
    if (j < 0) return 0;
    return gen_phi(n, p, s) * gen_phi(n - 1, p, s - j) *
           pow_count(p, static_cast<unsigned long>(s - j)) *
           qbinom(j + 1, 1, Count(p));
}

Count count_two_cols_j_eq_s(int n, std::uint64_t p, int s) {
    if (n < 2)
        throw ShapeUnsupported("count_two_cols_j_eq_s: needs n >= 2");
    require_s(s, "count_two_cols_j_eq_s");
    const Count q(p);
    Count first = gen_phi(n, p, s) * gen_phi(n - 1, p, 0) *
                  pow_count(p, static_cast<unsigned long>(s - 1)) * qbinom(2, 1, q);
    Count second = gen_phi(n, p, s - 1) * gen_phi(n - 1, p, 1) * Count(p) *
                   qbinom(s - 1, 1, q);
    return first + second;
}

Count count_one_row(int m, std::uint64_t p, int s, long r) {
    if (m < 1)
        throw ShapeUnsupported("count_one_row: needs m >= 1");
    require_s(s, "count_one_row");
    if (r < 0 || r >= s)
        throw RangeUnsupported("count_one_row: needs 0 <= r <= s-1");
    return gen_phi(1, p, s - r) *
           pow_count(p, static_cast<unsigned long>(s - r - 1) *
                             static_cast<unsigned long>(m - 1)) *
           qbinom(m, 1, Count(p));
}

Count count_mod_p(int n, int m, std::uint64_t p, long j) {
    if (n < 0 || m < 0)
        throw ShapeUnsupported("count_mod_p: negative dimension");
    if (j < 0) return 0;
    Count result = qbinom(m, j, Count(p));
    const Count pn = pow_count(p, static_cast<unsigned long>(n));
    for (long i = 0; i <= m - j - 1; ++i)
        result *= pn - pow_count(p, static_cast<unsigned long>(i));
    return result;
}

Count count_invertible(int n, std::uint64_t p, int s) {
    if (n < 1)
        throw ShapeUnsupported("count_invertible: needs n >= 1");
    require_s(s, "count_invertible");
    Count result = pow_count(p, static_cast<unsigned long>(s - 1) *
                                    static_cast<unsigned long>(n) *
                                    static_cast<unsigned long>(n));
    const Count pn = pow_count(p, static_cast<unsigned long>(n));
    for (int u = 0; u < n; ++u)
        result *= pn - pow_count(p, static_cast<unsigned long>(u));
    return result;
}

Dispatch count_matrices(int n, int m, std::uint64_t p, int s, long j, Recursion& rec) {
    if (n < 0 || m < 0 || s < 0)
        throw std::invalid_argument("count_matrices: negative parameter");
    const CountKey key{n, m, p, s, j};
    const bool in_range = j >= 0 && j <= static_cast<long>(s) * m;
    if (in_range && s >= 1 && m >= 1 && n >= m) {
        if (j == 0) return {count_unique(n, m, p, s), kFormulaUnique};
        if (s == 1) return {count_mod_p(n, m, p, j), kFormulaLandsberg};
        if (j < s) return {count_j_lt_s(n, m, p, s, j), kFormulaJltS};
        if (j == s) return {count_j_eq_s(n, m, p, s), kFormulaJeqS};
        return {rec.count(key), kFormulaRecursion};
    }
    if (in_range && n == 1 && m >= 1 && s >= 1 &&
        j >= static_cast<long>(s) * (m - 1) && j < static_cast<long>(s) * m) {
        return {count_one_row(m, p, s, j - static_cast<long>(s) * (m - 1)),
                kFormulaOneRow};
    }
    if (in_range && s == 1 && n >= 0 && m >= 0)
        return {count_mod_p(n, m, p, j), kFormulaLandsberg};
    return {rec.count(key), kFormulaRecursion};
}

} // namespace zps
