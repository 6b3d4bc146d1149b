#ifndef ZPS_CLOSED_FORM_HPP
#define ZPS_CLOSED_FORM_HPP

#include "zps/exact.hpp"
#include "zps/recursion.hpp"

#include <string_view>

namespace zps {

// Closed forms for the number of n x m matrices over Z_{p^s} with a kernel
// of p^j elements. Each covers one parameter regime; count_matrices picks
// the right one and falls back to the recursion. All results agree with
// Recursion::count exactly on their domains.

// j = 0 (unique solution), n >= m >= 1: (p^s)^{m(m-1)/2} * prod phi_u(p^s).
Count count_unique(int n, int m, std::uint64_t p, int s);

// Same count rewritten with the phi factors expanded into a pure p-power
// times prod (p^u - 1); valid for s = 1 or n = m.
Count count_unique_pform(int n, int m, std::uint64_t p, int s);

// 0 <= j < s, n >= m >= 1.
Count count_j_lt_s(int n, int m, std::uint64_t p, int s, long j);

// j = s, n >= m >= 1. Individual summands can carry negative p-powers, so
// they are assembled as exact rationals; a fractional total would be a bug
// and throws IntegralityViolation.
Count count_j_eq_s(int n, int m, std::uint64_t p, int s);

// The phi-product factor of one k-summand of count_j_eq_s (exposed for the
// identity tests).
Count phi_product(int n, int m, std::uint64_t p, int s, int k);

// Single column (m = 1): phi_n(p^{s-j}) for 0 <= j <= s, else 0.
Count count_col(int n, std::uint64_t p, int s, long j);

// Two columns, n >= 2: the j < s count, the coprime count for any j, and
// the j = s count.
Count count_two_cols(int n, std::uint64_t p, int s, long j);
Count coprime_count_two_cols(int n, std::uint64_t p, int s, long j);
Count count_two_cols_j_eq_s(int n, std::uint64_t p, int s);

// Single row (n = 1): the count at j = s(m-1) + r for 0 <= r <= s-1.
Count count_one_row(int m, std::uint64_t p, int s, long r);

// s = 1 (the ring is a field), any shape: Landsberg's 1893 formula.
Count count_mod_p(int n, int m, std::uint64_t p, long j);

// Invertible square matrices: p^{(s-1)n^2} * prod (p^n - p^u).
Count count_invertible(int n, std::uint64_t p, int s);

struct Dispatch {
    Count value;
    std::string_view formula; // which route produced the value
};

// Formula names reported by the dispatcher.
inline constexpr std::string_view kFormulaUnique = "unique";
inline constexpr std::string_view kFormulaJltS = "j-lt-s";
inline constexpr std::string_view kFormulaJeqS = "j-eq-s";
inline constexpr std::string_view kFormulaOneRow = "one-row";
inline constexpr std::string_view kFormulaLandsberg = "landsberg";
inline constexpr std::string_view kFormulaRecursion = "recursion";

// Prefers a closed form whenever one covers (n, m, s, j); otherwise
// evaluates the recursion.
Dispatch count_matrices(int n, int m, std::uint64_t p, int s, long j, Recursion& rec);

} // namespace zps

#endif
