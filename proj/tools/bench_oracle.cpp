// Times the enumeration oracle: serial reference vs the word-level kernel at
// one thread vs all threads. Run with no arguments for the default points.

#include "zps/oracle.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <vector>

namespace {

struct Point {
    int n, m, s;
    std::uint64_t p;
};

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    const std::vector<Point> points = {
        {3, 3, 2, 2}, // 262144 matrices mod 4
        {2, 3, 3, 2}, // 262144 matrices mod 8
        {2, 2, 2, 5}, // 390625 matrices mod 25
    };
    zps::OracleBudget budget;
    budget.max_matrices = zps::Count(1) << 30;
    budget.max_vectors_per_matrix = zps::Count(1) << 20;

    const int max_threads = zps::resolve_threads(0);
    std::printf("%-18s %12s %12s %12s %12s\n", "point", "reference", "smith x1",
                ("smith x" + std::to_string(max_threads)).c_str(), "direct xN");
    for (const Point& pt : points) {
        std::printf("%dx%d mod %llu^%d     ", pt.n, pt.m,
                    static_cast<unsigned long long>(pt.p), pt.s);

        auto t0 = std::chrono::steady_clock::now();
        auto ref = zps::bruteforce_table_reference(pt.n, pt.m, pt.p, pt.s, budget);
        double t_ref = seconds(t0);

        t0 = std::chrono::steady_clock::now();
        auto serial = zps::bruteforce_table(pt.n, pt.m, pt.p, pt.s, budget, 1);
        double t_serial = seconds(t0);

        t0 = std::chrono::steady_clock::now();
        auto parallel = zps::bruteforce_table(pt.n, pt.m, pt.p, pt.s, budget, max_threads);
        double t_parallel = seconds(t0);

        t0 = std::chrono::steady_clock::now();
        auto direct = zps::bruteforce_table_direct(pt.n, pt.m, pt.p, pt.s, budget, max_threads);
        double t_direct = seconds(t0);

        const bool agree = ref.counts == serial.counts &&
                           ref.counts == parallel.counts &&
                           ref.counts == direct.counts;
        std::printf("%10.3fs %11.3fs %11.3fs %11.3fs  %s\n", t_ref, t_serial,
                    t_parallel, t_direct, agree ? "tables agree" : "MISMATCH");
        if (!agree) return 1;
    }
    return 0;
}
