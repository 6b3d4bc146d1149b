#ifndef ZPS_ORACLE_HPP
#define ZPS_ORACLE_HPP

#include "zps/exact.hpp"
#include "zps/recursion.hpp"

namespace zps {

// Work caps for exhaustive enumeration. The matrix cap bounds (p^s)^{nm},
// the vector cap bounds the per-matrix kernel enumeration (p^s)^m.
struct OracleBudget {
    Count max_matrices = Count(1) << 24;
    Count max_vectors_per_matrix = Count(1) << 16;
};

// Ground truth by full enumeration: walk every n x m matrix over Z_{p^s}
// and histogram the kernel-size exponents. Kernel sizes come from the
// normal-form reduction. OpenMP-parallel over contiguous ranges of the
// mixed-radix matrix index; the merged histogram does not depend on the
// worker count. Throws BudgetExceeded when (p^s)^{nm} > max_matrices.
CountTable bruteforce_table(int n, int m, std::uint64_t p, int s,
                            const OracleBudget& budget = {}, int threads = 0);

// Second-opinion oracle: identical walk, but each kernel size is found by
// enumerating all candidate vectors, so it shares no reduction code with
// bruteforce_table. Additionally requires (p^s)^m <= max_vectors_per_matrix.
CountTable bruteforce_table_direct(int n, int m, std::uint64_t p, int s,
                                   const OracleBudget& budget = {}, int threads = 0);

// Serial reference for the parallel kernels: the same enumeration written
// naively on top of Matrix / solution_count, one matrix object at a time.
// Kept for tests and the benchmark; slow but obviously correct.
CountTable bruteforce_table_reference(int n, int m, std::uint64_t p, int s,
                                      const OracleBudget& budget = {});

// Worker count actually used when `threads` is 0 (the OpenMP default).
int resolve_threads(int threads);

} // namespace zps

#endif
