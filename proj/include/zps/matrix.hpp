#ifndef ZPS_MATRIX_HPP
#define ZPS_MATRIX_HPP

#include "zps/exact.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zps {

// Modulus p^s for a prime p and exponent s >= 1. Construction runs a
// deterministic primality check on p.
class PrimePower {
public:
    PrimePower(std::uint64_t p, int s);

    std::uint64_t p() const { return p_; }
    int s() const { return s_; }
    const Count& value() const { return value_; }

    // Word-sized copy of p^s; throws std::overflow_error when p^s >= 2^63.
    std::uint64_t value_u64() const;

    bool fits_u64() const { return fits_; }

private:
    std::uint64_t p_;
    int s_;
    Count value_;
    std::uint64_t value_u64_ = 0;
    bool fits_ = false;
};

// p-adic valuations of the diagonal normal form, nondecreasing, each in
// [0, s]; the zero residue carries valuation s.
struct SmithProfile {
    std::vector<int> valuations;

    bool operator==(const SmithProfile&) const = default;
};

// Concrete n x m matrix over Z_{p^s}, entries stored reduced into [0, p^s).
// Requires p^s < 2^63 so entry arithmetic stays in machine words; the
// counting side of the library has no such limit.
class Matrix {
public:
    Matrix(PrimePower modulus, int n, int m, const std::vector<Count>& entries);
    Matrix(PrimePower modulus, int n, int m, const std::vector<std::int64_t>& entries);
    Matrix(PrimePower modulus, int n, int m); // zero matrix

    const PrimePower& modulus() const { return mod_; }
    int rows() const { return n_; }
    int cols() const { return m_; }
    std::uint64_t at(int i, int j) const { return e_[static_cast<std::size_t>(i) * m_ + j]; }
    const std::vector<std::uint64_t>& entries() const { return e_; }

private:
    PrimePower mod_;
    int n_;
    int m_;
    std::vector<std::uint64_t> e_;
};

// Diagonalize by invertible row/column operations, pivoting on an entry of
// minimal p-valuation (first such entry in row-major order).
SmithProfile smith_profile(const Matrix& a);

// Number of solutions of Ax = 0 over Z_{p^s}: p^{sum of valuations + s*max(0, m-n)}.
Count solution_count(const Matrix& a);

// Same exponent, stated separately so callers can avoid the big power.
long solution_exponent(const Matrix& a);

// Exhaustive check of every x in Z_{p^s}^m; requires (p^s)^m <= budget.
// Shares no reduction code with smith_profile. May enumerate in parallel;
// the result is the same for any worker count.
Count kernel_count_bruteforce(const Matrix& a, const Count& budget, int threads = 0);

// Valuation of gcd(det A, p^s), in [0, s]; determinant computed exactly over
// the integers (Bareiss), so this is independent of the normal-form route.
int det_valuation(const Matrix& a);

// True iff gcd(det A, p^s) equals the solution count.
bool gcd_det_correct(const Matrix& a);

// --- word-level kernels shared with the enumeration oracle ---

// In-place reduction of a row-major n x m buffer with entries in [0, r),
// r = p^s < 2^63. Writes min(n, m) nondecreasing valuations.
void smith_valuations_u64(std::uint64_t* a, int n, int m,
                          std::uint64_t p, int s, int* valuations);

// Solution exponent from a scratch buffer (destroys it).
long solution_exponent_u64(std::uint64_t* scratch, int n, int m,
                           std::uint64_t p, int s);

// Serial kernel count over a column-major matrix layout: cols[c*n + i] is
// entry (i, c). Pure matrix-vector arithmetic; n_vectors must equal r^m.
std::uint64_t kernel_count_serial_u64(const std::uint64_t* cols, int n, int m,
                                      std::uint64_t r, std::uint64_t n_vectors);

// --- matrix file format ---

// Parses the five-key JSON object {p, s, n, m, entries}; arbitrary integers
// (numbers or decimal strings) are reduced on load. Throws
// std::invalid_argument on any malformed input.
Matrix matrix_from_json(std::istream& in);
Matrix matrix_from_json(const std::string& text);
std::string matrix_to_json(const Matrix& a);

} // namespace zps

#endif
