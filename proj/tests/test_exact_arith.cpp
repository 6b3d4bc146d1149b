#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zps/errors.hpp"
#include "zps/exact.hpp"
#include "zps/qbinom.hpp"

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

using namespace zps;

namespace {

// Independent oracle: count k-dimensional subspaces of F_p^n by materializing
// the span of every k-tuple of vectors and deduplicating. Vectors are indices
// in [0, p^n) read as base-p digit strings.
std::uint64_t subspace_count_bruteforce(int n, int k, std::uint64_t p) {
    const std::uint64_t space = pow_u64(p, static_cast<unsigned>(n));
    std::vector<std::uint64_t> vecs(space);
    std::iota(vecs.begin(), vecs.end(), 0);

    auto add = [&](std::uint64_t a, std::uint64_t b) {
        std::uint64_t out = 0, mult = 1;
        for (int d = 0; d < n; ++d) {
            out += (a % p + b % p) % p * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        return out;
    };

    const std::uint64_t tuples = pow_u64(space, static_cast<unsigned>(k));
    std::set<std::set<std::uint64_t>> spans;
    for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t idx = t;
        std::vector<std::uint64_t> gens;
        for (int i = 0; i < k; ++i) { gens.push_back(idx % space); idx /= space; }
        // span = all coefficient combinations of the generators
        std::set<std::uint64_t> span;
        const std::uint64_t combos = pow_u64(p, static_cast<unsigned>(k));
        for (std::uint64_t c = 0; c < combos; ++c) {
            std::uint64_t coeffs = c, v = 0;
            for (int i = 0; i < k; ++i) {
                std::uint64_t ci = coeffs % p;
                coeffs /= p;
                for (std::uint64_t rep = 0; rep < ci; ++rep) v = add(v, gens[static_cast<std::size_t>(i)]);
            }
            span.insert(v);
        }
        if (span.size() == combos) // generators independent => dimension k
            spans.insert(std::move(span));
    }
    return spans.size();
}

// Independent oracle for gen_phi: walk all tuples in [1, p^t]^n.
std::uint64_t coprime_tuple_count(int n, std::uint64_t p, int t) {
    const std::uint64_t c = pow_u64(p, static_cast<unsigned>(t));
    const std::uint64_t tuples = pow_u64(c, static_cast<unsigned>(n));
    std::uint64_t hits = 0;
    for (std::uint64_t idx = 0; idx < tuples; ++idx) {
        std::uint64_t rest = idx;
        bool coprime = false;
        for (int i = 0; i < n; ++i) {
            std::uint64_t a = rest % c + 1;
            rest /= c;
            if (a % p != 0) { coprime = true; break; }
        }
        if (coprime) ++hits;
    }
    return hits;
}

} // namespace

TEST_CASE("qbinom base cases and pinned values") {
    CHECK(qbinom(5, 0, Count(2)) == 1);
    CHECK(qbinom(2, 3, Count(2)) == 0);
    // subspace counts frozen from the enumeration oracle below
    CHECK(qbinom(2, 1, Count(2)) == 3);
    CHECK(qbinom(4, 2, Count(2)) == 35);
    CHECK(qbinom(2, 1, Count(2)) == subspace_count_bruteforce(2, 1, 2));
    CHECK(qbinom(4, 2, Count(2)) == subspace_count_bruteforce(4, 2, 2));
    CHECK(qbinom(2, 1, Count(3)) == subspace_count_bruteforce(2, 1, 3));
    CHECK(qbinom(3, 2, Count(3)) == subspace_count_bruteforce(3, 2, 3));
    CHECK(qbinom(0, 0, Count(7)) == 1);
    CHECK_THROWS_AS(qbinom(3, 1, Count(1)), std::invalid_argument);
    CHECK_THROWS_AS(qbinom(-1, 0, Count(2)), std::invalid_argument);
}

TEST_CASE("qbinom symmetry") {
    for (long n = 0; n <= 8; ++n)
        for (long k = 0; k <= n; ++k)
            for (std::uint64_t q : {2ull, 3ull, 5ull})
                CHECK(qbinom(n, k, Count(q)) == qbinom(n, n - k, Count(q)));
}

TEST_CASE("Pascal analogs") {
    for (long n = 1; n <= 8; ++n)
        for (long k = 1; k <= n; ++k)
            for (std::uint64_t q : {2ull, 3ull, 5ull}) {
                const Count qq(q);
                CHECK(qbinom(n, k, qq) ==
                      qbinom(n - 1, k, qq) +
                          pow_count(q, static_cast<unsigned long>(n - k)) * qbinom(n - 1, k - 1, qq));
                CHECK(qbinom(n, k, qq) ==
                      qbinom(n - 1, k - 1, qq) +
                          pow_count(q, static_cast<unsigned long>(k)) * qbinom(n - 1, k, qq));
            }
}

TEST_CASE("telescoping sum identity (q-power weights)") {
    for (long n = 0; n <= 8; ++n)
        for (long j = 0; j <= 8; ++j)
            for (std::uint64_t q : {2ull, 3ull, 5ull}) {
                const Count qq(q);
                Count lhs = 0;
                for (long i = 0; i <= j; ++i)
                    lhs += pow_count(q, static_cast<unsigned long>(i)) * qbinom(n + i, i, qq);
                CHECK(lhs == qbinom(n + j + 1, j, qq));
            }
}

TEST_CASE("q-Vandermonde convolution") {
    for (long n = 0; n <= 8; ++n)
        for (long m = 0; m <= 8; ++m)
            for (long h = 0; h <= n + m; ++h)
                for (std::uint64_t q : {2ull, 3ull, 5ull}) {
                    const Count qq(q);
                    Count lhs = 0;
                    for (long k = 0; k <= h; ++k) {
                        Count term = qbinom(n, k, qq) * qbinom(m, h - k, qq);
                        if (term == 0) continue;
                        term *= pow_count(q, static_cast<unsigned long>((n - k) * (h - k)));
                        lhs += term;
                    }
                    CHECK(lhs == qbinom(m + n, h, qq));
                }
}

TEST_CASE("qbinom is a polynomial of degree k(n-k) in q") {
    // Finite differences at consecutive integer arguments: for a degree-d
    // polynomial the d-th difference is a nonzero constant and the (d+1)-th
    // vanishes.
    for (long n = 1; n <= 5; ++n)
        for (long k = 1; k <= n; ++k) {
            const long d = k * (n - k);
            std::vector<Count> diffs;
            for (long q = 2; q <= 2 + d + 2; ++q)
                diffs.push_back(qbinom(n, k, Count(q)));
            for (long order = 1; order <= d + 1; ++order) {
                for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
                    diffs[i] = diffs[i + 1] - diffs[i];
                diffs.pop_back();
                if (order == d) {
                    CHECK(diffs.front() != 0);
                    CHECK(diffs.front() == diffs.back()); // constant
                }
            }
            for (const Count& c : diffs) CHECK(c == 0);
        }
}

TEST_CASE("qbinom_at_inverse pinned values") {
    CHECK(qbinom_at_inverse(3, 0, 5) == Rational(1));
    CHECK(qbinom_at_inverse(2, 1, 2) == Rational(3, 2));
    CHECK(qbinom_at_inverse(4, 2, 2) == Rational(35, 16));
    CHECK(qbinom_at_inverse(4, 6, 3) == Rational(0));
    // defining relation qbinom(n,k,p) = p^{k(n-k)} qbinom_at_inverse(n,k,p)
    for (long n = 0; n <= 6; ++n)
        for (long k = 0; k <= n; ++k)
            for (std::uint64_t p : {2ull, 3ull, 5ull}) {
                Rational lhs(qbinom(n, k, Count(p)));
                Rational rhs = qbinom_at_inverse(n, k, p) *
                               Rational(pow_count(p, static_cast<unsigned long>(k * (n - k))));
                rhs.canonicalize();
                CHECK(lhs == rhs);
            }
}

TEST_CASE("gen_phi values and enumeration oracle") {
    CHECK(gen_phi(3, 7, 0) == 1);
    CHECK(gen_phi(1, 2, 3) == 4); // Euler phi of 8
    CHECK(gen_phi(2, 2, 2) == 12);
    CHECK(gen_phi(2, 2, 2) == coprime_tuple_count(2, 2, 2));
    CHECK(gen_phi(3, 2, 1) == coprime_tuple_count(3, 2, 1));
    CHECK(gen_phi(2, 3, 2) == coprime_tuple_count(2, 3, 2));
    CHECK(gen_phi(1, 5, 2) == coprime_tuple_count(1, 5, 2));
    CHECK_THROWS_AS(gen_phi(0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_phi(2, 2, -1), std::invalid_argument);
}

TEST_CASE("decimal and fraction rendering") {
    Rational q(123, 128);
    CHECK(fraction_string(q) == "123/128");
    CHECK(decimal_string(q, 7) == "0.9609375");
    CHECK(fraction_string(Rational(4)) == "4");
    CHECK(decimal_string(Rational(1, 3), 4) == "0.3333");
}

TEST_CASE("primality check") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(97));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(4));
    CHECK_FALSE(is_prime_u64(561));            // Carmichael
    CHECK(is_prime_u64(2147483647ull));        // 2^31 - 1
    CHECK_FALSE(is_prime_u64(2147483647ull * 2147483629ull));
    CHECK(is_prime_u64(18446744073709551557ull)); // largest 64-bit prime
}
