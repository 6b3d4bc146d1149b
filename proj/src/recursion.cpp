#include "zps/recursion.hpp"

#include "zps/errors.hpp"
#include "zps/qbinom.hpp"

#include <stdexcept>

namespace zps {

Count CountTable::get(long j) const {
    auto it = counts.find(j);
    return it == counts.end() ? Count(0) : it->second;
}

Count CountTable::total() const {
    return pow_count(p, static_cast<unsigned long>(s) *
                            static_cast<unsigned long>(n) *
                            static_cast<unsigned long>(m));
}

Count Recursion::count(const CountKey& key) {
    const auto [n, m, p, s, j] = key;
    if (n < 0 || m < 0 || s < 0)
        throw std::invalid_argument("Recursion::count: negative dimension or exponent");

    // Base cases. The recursion bottoms out on the trivial ring, empty
    // shapes and single columns; everything else splits by divisibility of
    // the whole matrix by p.
    if (j < 0) return 0;
    if (s == 0) return j == 0 ? 1 : 0;       // Z_1 has one matrix, one solution
    if (m == 0) return j == 0 ? 1 : 0;       // the empty vector is the only solution
    if (n == 0) return j == static_cast<long>(s) * m ? 1 : 0; // no constraints
    if (j > static_cast<long>(s) * m) return 0;
    if (m == 1) return j <= s ? gen_phi(n, p, s - j) : 0;

    if (auto it = count_memo_.find(key); it != count_memo_.end()) return it->second;

    CountKey reduced{n, m, p, s - 1, j - m};
    Count value = count(reduced) + coprime_count(key);
    count_memo_.emplace(key, value);
    return value;
}

Count Recursion::coprime_count(const CountKey& key) {
    if (key.s < 1 || key.m < 1)
        throw std::invalid_argument("coprime_count: requires s >= 1 and m >= 1");
    if (key.n == 0 || key.j < 0) return 0; // no entries to be invertible
    Count sum = 0;
    const long top = std::min<long>(key.j, key.m - 1);
    for (long i = 0; i <= top; ++i)
        sum += coprime_count_col(static_cast<int>(i), key);
    return sum;
}

Count Recursion::coprime_count_col(int i, const CountKey& key) {
    const auto [n, m, p, s, j] = key;
    if (s < 1 || m < 1)
        throw std::invalid_argument("coprime_count_col: requires s >= 1 and m >= 1");
    if (i < 0 || i >= m)
        throw IndexOutOfRange("coprime_count_col: column index " + std::to_string(i) +
                              " outside [0, " + std::to_string(m) + ")");
    if (n == 0) return 0;
    if (j < i) return 0; // columns 0..i-1 divisible by p force >= p^i solutions

    const auto memo_key = std::make_pair(i, key);
    if (auto it = col_memo_.find(memo_key); it != col_memo_.end()) return it->second;

    // Eliminate with the invertible entry of column i as pivot: the square
    // factor counts the free entries of the pivot row and column, the
    // bracket counts the reduced (n-1) x (m-1) systems.
    Count bracket = count(CountKey{n - 1, m - 1, p, s - 1, j - (m - 1)});
    if (i < m - 1) {
        const long top = std::min<long>(j, m - 2);
        CountKey sub{n - 1, m - 1, p, s, j};
        for (long k = i; k <= top; ++k)
            bracket += coprime_count_col(static_cast<int>(k), sub);
    }
    Count value = gen_phi(n, p, s) *
                  pow_count(p, static_cast<unsigned long>(s - 1) * i +
                                   static_cast<unsigned long>(s) * (m - i - 1)) *
                  bracket;
    col_memo_.emplace(memo_key, value);
    return value;
}

CountTable Recursion::table(int n, int m, std::uint64_t p, int s) {
    if (n < 0 || m < 0 || s < 0)
        throw std::invalid_argument("Recursion::table: negative parameter");
    CountTable t;
    t.n = n;
    t.m = m;
    t.p = p;
    t.s = s;
    const long jmax = static_cast<long>(s) * m;
    for (long j = 0; j <= jmax; ++j) {
        Count c = count(CountKey{n, m, p, s, j});
        if (c != 0) t.counts.emplace(j, std::move(c));
    }
    return t;
}

} // namespace zps
