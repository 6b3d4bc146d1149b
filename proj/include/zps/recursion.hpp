#ifndef ZPS_RECURSION_HPP
#define ZPS_RECURSION_HPP

#include "zps/exact.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <utility>

namespace zps {

// Parameter tuple of one counting query: matrices of shape n x m over
// Z_{p^s} whose kernel has exactly p^j elements. j may be probed outside
// [0, sm]; such probes count zero matrices.
struct CountKey {
    int n = 0;
    int m = 0;
    std::uint64_t p = 2;
    int s = 0;
    long j = 0;

    auto operator<=>(const CountKey&) const = default;
};

// Map j -> count for one (n, m, p, s); zero counts are omitted.
struct CountTable {
    int n = 0;
    int m = 0;
    std::uint64_t p = 2;
    int s = 0;
    std::map<long, Count> counts;

    Count get(long j) const;
    Count total() const; // p^{s*n*m}, what the counts must sum to
    bool operator==(const CountTable&) const = default;
};

// Memoized evaluator of the mutual counting recursion. All methods are
// deterministic; an instance confines its cache, so either keep one per
// thread or guard it externally.
class Recursion {
public:
    // Matrices with exactly p^j kernel vectors.
    Count count(const CountKey& key);

    // Restriction to coprime matrices (at least one entry invertible mod p).
    // Requires s >= 1 and m >= 1.
    Count coprime_count(const CountKey& key);

    // Further restriction: the first column holding an invertible entry is
    // column i (0-based), so columns 0..i-1 are divisible by p.
    // Requires 0 <= i < m; throws IndexOutOfRange otherwise.
    Count coprime_count_col(int i, const CountKey& key);

    // Full table over j = 0..s*m.
    CountTable table(int n, int m, std::uint64_t p, int s);

private:
    std::map<CountKey, Count> count_memo_;
    std::map<std::pair<int, CountKey>, Count> col_memo_;
};

} // namespace zps

#endif
