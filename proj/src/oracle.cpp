#include "zps/oracle.hpp"

#include "zps/errors.hpp"
#include "zps/matrix.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace zps {

int resolve_threads(int threads) {
    return threads > 0 ? threads : omp_get_max_threads();
}

namespace {

struct EnumPlan {
    std::uint64_t r = 0;      // ring size p^s
    std::uint64_t total = 0;  // r^{nm}, number of matrices
    long jmax = 0;            // s*m
};

EnumPlan plan_enumeration(int n, int m, std::uint64_t p, int s, const Count& max_matrices) {
    if (n < 0 || m < 0)
        throw std::invalid_argument("oracle: negative dimension");
    if (s < 1)
        throw std::invalid_argument("oracle: needs s >= 1");
    if (!is_prime_u64(p))
        throw std::invalid_argument("oracle: p is not prime");
    Count space = pow_count(p, static_cast<unsigned long>(s) *
                                   static_cast<unsigned long>(n) *
                                   static_cast<unsigned long>(m));
    if (space > max_matrices)
        throw BudgetExceeded("matrix space has " + space.get_str() +
                             " elements, budget is " + max_matrices.get_str());
    if (mpz_sizeinbase(space.get_mpz_t(), 2) > 62)
        throw BudgetExceeded("matrix space of " + space.get_str() +
                             " elements exceeds the enumerable range");
    EnumPlan plan;
    plan.r = pow_u64(p, static_cast<unsigned>(s));
    plan.total = mpz_get_ui(space.get_mpz_t());
    plan.jmax = static_cast<long>(s) * m;
    return plan;
}

void index_to_digits(std::uint64_t idx, std::uint64_t r, std::vector<std::uint64_t>& digits) {
    for (auto& d : digits) { d = idx % r; idx /= r; }
}

bool next_digits(std::uint64_t r, std::vector<std::uint64_t>& digits) {
    for (auto& d : digits) {
        if (d + 1 < r) { ++d; return true; }
        d = 0;
    }
    return false;
}

CountTable merge_histograms(int n, int m, std::uint64_t p, int s,
                            const std::vector<std::vector<std::uint64_t>>& hists) {
    CountTable table;
    table.n = n;
    table.m = m;
    table.p = p;
    table.s = s;
    if (hists.empty()) return table;
    for (std::size_t j = 0; j < hists.front().size(); ++j) {
        std::uint64_t sum = 0;
        for (const auto& h : hists) sum += h[j];
        if (sum != 0) table.counts.emplace(static_cast<long>(j), Count(sum));
    }
    return table;
}

template <class PerMatrix>
std::vector<std::vector<std::uint64_t>> enumerate_matrices(const EnumPlan& plan,
                                                           int nm, int threads,
                                                           PerMatrix&& kernel_exponent) {
    const int nt = std::max(1, resolve_threads(threads));
    std::vector<std::vector<std::uint64_t>> hists(
        static_cast<std::size_t>(nt),
        std::vector<std::uint64_t>(static_cast<std::size_t>(plan.jmax) + 1, 0));

#pragma omp parallel num_threads(nt)
    {
        const std::uint64_t tid = static_cast<std::uint64_t>(omp_get_thread_num());
        const std::uint64_t tcount = static_cast<std::uint64_t>(omp_get_num_threads());
        const std::uint64_t base = plan.total / tcount, extra = plan.total % tcount;
        const std::uint64_t lo = base * tid + std::min(tid, extra);
        const std::uint64_t hi = lo + base + (tid < extra ? 1 : 0);
        if (lo < hi) {
            auto& hist = hists[static_cast<std::size_t>(tid)];
            std::vector<std::uint64_t> digits(static_cast<std::size_t>(nm), 0);
            index_to_digits(lo, plan.r, digits);
            for (std::uint64_t t = lo;; ++t) {
                ++hist[static_cast<std::size_t>(kernel_exponent(digits))];
                if (t + 1 == hi) break;
                next_digits(plan.r, digits);
            }
        }
    }
    return hists;
}

} // namespace

CountTable bruteforce_table(int n, int m, std::uint64_t p, int s,
                            const OracleBudget& budget, int threads) {
    const EnumPlan plan = plan_enumeration(n, m, p, s, budget.max_matrices);
    const int nm = n * m;
    std::vector<std::vector<std::uint64_t>> scratches(
        static_cast<std::size_t>(std::max(1, resolve_threads(threads))),
        std::vector<std::uint64_t>(static_cast<std::size_t>(nm), 0));

    auto hists = enumerate_matrices(
        plan, nm, threads, [&](const std::vector<std::uint64_t>& digits) -> long {
            auto& scratch = scratches[static_cast<std::size_t>(omp_get_thread_num())];
            std::copy(digits.begin(), digits.end(), scratch.begin());
            return solution_exponent_u64(scratch.data(), n, m, p, s);
        });
    return merge_histograms(n, m, p, s, hists);
}

CountTable bruteforce_table_direct(int n, int m, std::uint64_t p, int s,
                                   const OracleBudget& budget, int threads) {
    const EnumPlan plan = plan_enumeration(n, m, p, s, budget.max_matrices);
    Count vector_space = pow_count(p, static_cast<unsigned long>(s) *
                                          static_cast<unsigned long>(m));
    if (vector_space > budget.max_vectors_per_matrix)
        throw BudgetExceeded("kernel enumeration needs " + vector_space.get_str() +
                             " vectors per matrix, budget is " +
                             budget.max_vectors_per_matrix.get_str());
    const std::uint64_t n_vectors = mpz_get_ui(vector_space.get_mpz_t());
    const int nm = n * m;
    std::vector<std::vector<std::uint64_t>> colbufs(
        static_cast<std::size_t>(std::max(1, resolve_threads(threads))),
        std::vector<std::uint64_t>(static_cast<std::size_t>(nm), 0));

    auto hists = enumerate_matrices(
        plan, nm, threads, [&](const std::vector<std::uint64_t>& digits) -> long {
            // digits are row-major; transpose into the column-major buffer
            auto& cols = colbufs[static_cast<std::size_t>(omp_get_thread_num())];
            for (int i = 0; i < n; ++i)
                for (int c = 0; c < m; ++c)
                    cols[static_cast<std::size_t>(c) * n + i] =
                        digits[static_cast<std::size_t>(i) * m + c];
            std::uint64_t hits = kernel_count_serial_u64(cols.data(), n, m, plan.r, n_vectors);
            long j = 0;
            while (hits > 1) { hits /= p; ++j; }
            return j;
        });
    return merge_histograms(n, m, p, s, hists);
}

CountTable bruteforce_table_reference(int n, int m, std::uint64_t p, int s,
                                      const OracleBudget& budget) {
    const EnumPlan plan = plan_enumeration(n, m, p, s, budget.max_matrices);
    const PrimePower modulus(p, s);
    CountTable table;
    table.n = n;
    table.m = m;
    table.p = p;
    table.s = s;
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(n) * m, 0);
    std::vector<std::int64_t> entries(digits.size(), 0);
    for (std::uint64_t t = 0;; ++t) {
        std::copy(digits.begin(), digits.end(), entries.begin());
        Matrix a(modulus, n, m, entries);
        ++table.counts[solution_exponent(a)];
        if (t + 1 == plan.total) break;
        next_digits(plan.r, digits);
    }
    return table;
}

} // namespace zps
