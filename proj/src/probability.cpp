#include "zps/probability.hpp"

#include "zps/closed_form.hpp"
#include "zps/errors.hpp"
#include "zps/qbinom.hpp"

#include <stdexcept>
#include <utility>

namespace zps {

long tri(long n, long k) {
    if (n < k - 1)
        throw std::invalid_argument("tri: needs n >= k-1");
    return (n - k + 1) * (n + k) / 2;
}

Count factor_product(long n, long k, std::uint64_t p) {
    Count result = 1;
    for (long u = k; u <= n; ++u)
        result *= pow_count(p, static_cast<unsigned long>(u)) - 1;
    return result;
}

Count sum_below_s(int n, std::uint64_t p, int s) {
    if (n < 1)
        throw ShapeUnsupported("sum_below_s: needs n >= 1");
    if (s < 1)
        throw RangeUnsupported("sum_below_s: needs s >= 1");
    const long exp = static_cast<long>(s) * (static_cast<long>(n) * n - n) - tri(n - 1);
    return pow_count(p, static_cast<unsigned long>(exp)) * factor_product(n + s - 1, s, p);
}

Rational normalized_j_eq_s(int n, std::uint64_t p, int s) {
    if (n < 1)
        throw ShapeUnsupported("normalized_j_eq_s: needs n >= 1");
    if (s < 1)
        throw RangeUnsupported("normalized_j_eq_s: needs s >= 1");

    auto p_to = [&](long e) {
        Rational r = e >= 0 ? Rational(pow_count(p, static_cast<unsigned long>(e)))
                            : Rational(1, pow_count(p, static_cast<unsigned long>(-e)));
        r.canonicalize();
        return r;
    };

    // (p^n - 1) * sum_j (-1)^j p^{-n-(j+1)s-tri(j)} qbinom_inv(n-1, j)
    Rational first(0);
    for (int j = 0; j <= n - 1; ++j) {
        Rational term = p_to(-static_cast<long>(n) - static_cast<long>(j + 1) * s - tri(j));
        term *= qbinom_at_inverse(n - 1, j, p);
        if (j % 2) first -= term; else first += term;
    }
    first *= Rational(pow_count(p, static_cast<unsigned long>(n)) - 1);

    // p^{-s} qbinom_inv(n, 1) * sum_i (-1)^i p^{-tri(i+1)} qbinom_inv(n-1, i)
    Rational second(0);
    for (int i = 0; i <= n - 1; ++i) {
        Rational term = p_to(-tri(i + 1));
        term *= qbinom_at_inverse(n - 1, i, p);
        if (i % 2) second -= term; else second += term;
    }
    second *= p_to(-s);
    second *= qbinom_at_inverse(n, 1, p);

    Rational total = first + second;
    total.canonicalize();
    return total;
}

Rational prob_gcd_correct(int n, std::uint64_t p, int s) {
    if (n < 1)
        throw ShapeUnsupported("prob_gcd_correct: needs n >= 1");
    if (s < 1)
        throw RangeUnsupported("prob_gcd_correct: needs s >= 1");
    Count favorable = sum_below_s(n, p, s) + count_j_eq_s(n, n, p, s);
    Count all = pow_count(p, static_cast<unsigned long>(s) *
                                 static_cast<unsigned long>(n) *
                                 static_cast<unsigned long>(n));
    Rational prob(favorable, all);
    prob.canonicalize();
    return prob;
}

Rational asymptotic_residual(int n, std::uint64_t p, int s) {
    if (n < 2)
        throw ShapeUnsupported("asymptotic_residual: needs n >= 2");
    if (s < 1)
        throw RangeUnsupported("asymptotic_residual: needs s >= 1");
    Rational leading(1);
    leading -= Rational(1, pow_count(p, static_cast<unsigned long>(s) + 3));
    leading.canonicalize();
    Rational residual = leading - prob_gcd_correct(n, p, s);
    residual.canonicalize();
    return residual;
}

bool factor_product_expansion_ok(long n, long k, std::uint64_t p) {
    if (n < k || k < 1)
        throw std::invalid_argument("factor_product_expansion_ok: needs n >= k >= 1");
    Count lhs = factor_product(n, k, p);
    Count rhs = 0;
    for (long j = 0; j <= n - k + 1; ++j) {
        // tri(n-j, k) is the empty sum 0 at j = n-k+1
        Count term = pow_count(p, static_cast<unsigned long>(tri(n - j, k)));
        term *= qbinom(n - k + 1, j, Count(p));
        if (j % 2) rhs -= term; else rhs += term;
    }
    return lhs == rhs;
}

bool vandermonde_instance_ok(int n, int s, std::uint64_t p) {
    if (n < 1 || s < 1)
        throw std::invalid_argument("vandermonde_instance_ok: needs n, s >= 1");
    const Count q(p);
    Count lhs = 0;
    for (long k = std::max(0, n - s); k <= n - 1; ++k) {
        Count term = pow_count(p, static_cast<unsigned long>(k * (s - n + k)));
        term *= qbinom(n, k, q);
        term *= qbinom(s - 1, n - 1 - k, q);
        lhs += term;
    }
    return lhs == qbinom(n + s - 1, s, q);
}

CrtSystem::CrtSystem(std::vector<CountTable> factor_tables)
    : tables_(std::move(factor_tables)) {
    if (tables_.empty())
        throw std::invalid_argument("CrtSystem: needs at least one factor");
    n_ = tables_.front().n;
    m_ = tables_.front().m;
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        if (tables_[i].n != n_ || tables_[i].m != m_)
            throw std::invalid_argument("CrtSystem: factor tables disagree on shape");
        if (!is_prime_u64(tables_[i].p))
            throw std::invalid_argument("CrtSystem: table modulus base is not prime");
        for (std::size_t k = 0; k < i; ++k)
            if (tables_[k].p == tables_[i].p)
                throw DuplicatePrime("CrtSystem: prime " + std::to_string(tables_[i].p) +
                                     " appears twice");
    }
}

Count CrtSystem::modulus() const {
    Count result = 1;
    for (const auto& t : tables_)
        result *= pow_count(t.p, static_cast<unsigned long>(t.s));
    return result;
}

Count CrtSystem::solution_count(const std::vector<long>& js) const {
    if (js.size() != tables_.size())
        throw std::invalid_argument("CrtSystem: exponent tuple has wrong length");
    Count result = 1;
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        if (js[i] < 0)
            throw std::invalid_argument("CrtSystem: negative exponent");
        result *= pow_count(tables_[i].p, static_cast<unsigned long>(js[i]));
    }
    return result;
}

Count CrtSystem::count(const std::vector<long>& js) const {
    if (js.size() != tables_.size())
        throw std::invalid_argument("CrtSystem: exponent tuple has wrong length");
    Count result = 1;
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        result *= tables_[i].get(js[i]);
        if (result == 0) break;
    }
    return result;
}

} // namespace zps
