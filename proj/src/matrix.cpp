#include "zps/matrix.hpp"

#include "zps/errors.hpp"

#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace zps {

namespace {

// valuation of x in [0, p^s): number of p factors, with v(0) = s
int valuation_u64(std::uint64_t x, std::uint64_t p, int s) {
    if (x == 0) return s;
    int v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

int effective_threads(int threads) {
    return threads > 0 ? threads : omp_get_max_threads();
}

// Kernel hits for the mixed-radix vector indices [lo, hi). cols is
// column-major: cols[c*n + i] is entry (i, c). The odometer keeps the
// running products y = A x mod r; every digit touched by an increment adds
// its column once, because stepping a digit is +1 and wrapping r-1 -> 0 is
// -(r-1) = +1 mod r.
std::uint64_t kernel_hits_range(const std::uint64_t* cols, int n, int m,
                                std::uint64_t r, std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return 0;
    std::vector<std::uint64_t> x(static_cast<std::size_t>(m), 0);
    std::vector<std::uint64_t> y(static_cast<std::size_t>(n), 0);
    std::uint64_t idx = lo;
    for (int d = 0; d < m; ++d) { x[static_cast<std::size_t>(d)] = idx % r; idx /= r; }
    for (int i = 0; i < n; ++i) {
        std::uint64_t acc = 0;
        for (int d = 0; d < m; ++d)
            acc = (acc + mulmod_u64(cols[static_cast<std::size_t>(d) * n + i],
                                    x[static_cast<std::size_t>(d)], r)) % r;
        y[static_cast<std::size_t>(i)] = acc;
    }
    std::uint64_t hits = 0;
    for (std::uint64_t t = lo;; ++t) {
        bool zero = true;
        for (int i = 0; i < n; ++i)
            if (y[static_cast<std::size_t>(i)] != 0) { zero = false; break; }
        if (zero) ++hits;
        if (t + 1 == hi) break;
        int d = 0;
        while (true) {
            const std::uint64_t* col = cols + static_cast<std::size_t>(d) * n;
            for (int i = 0; i < n; ++i) {
                y[static_cast<std::size_t>(i)] += col[i];
                if (y[static_cast<std::size_t>(i)] >= r) y[static_cast<std::size_t>(i)] -= r;
            }
            if (x[static_cast<std::size_t>(d)] + 1 < r) { ++x[static_cast<std::size_t>(d)]; break; }
            x[static_cast<std::size_t>(d)] = 0;
            ++d;
        }
    }
    return hits;
}

} // namespace

PrimePower::PrimePower(std::uint64_t p, int s) : p_(p), s_(s) {
    if (!is_prime_u64(p))
        throw std::invalid_argument("PrimePower: p = " + std::to_string(p) + " is not prime");
    if (s < 1)
        throw std::invalid_argument("PrimePower: exponent must be >= 1");
    value_ = pow_count(p, static_cast<unsigned long>(s));
    fits_ = mpz_sizeinbase(value_.get_mpz_t(), 2) <= 62;
    if (fits_) value_u64_ = mpz_get_ui(value_.get_mpz_t());
}

std::uint64_t PrimePower::value_u64() const {
    if (!fits_)
        throw std::overflow_error("PrimePower: p^s too large for matrix arithmetic");
    return value_u64_;
}

Matrix::Matrix(PrimePower modulus, int n, int m, const std::vector<Count>& entries)
    : mod_(std::move(modulus)), n_(n), m_(m) {
    if (n < 0 || m < 0)
        throw std::invalid_argument("Matrix: negative dimension");
    if (entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(m))
        throw std::invalid_argument("Matrix: entry count does not match shape");
    const std::uint64_t r = mod_.value_u64();
    e_.reserve(entries.size());
    for (const Count& x : entries) {
        Count red = x % mod_.value();
        if (red < 0) red += mod_.value();
        e_.push_back(mpz_get_ui(red.get_mpz_t()) % r);
    }
}

Matrix::Matrix(PrimePower modulus, int n, int m, const std::vector<std::int64_t>& entries)
    : Matrix(std::move(modulus), n, m,
             std::vector<Count>(entries.begin(), entries.end())) {}

Matrix::Matrix(PrimePower modulus, int n, int m)
    : mod_(std::move(modulus)), n_(n), m_(m) {
    if (n < 0 || m < 0)
        throw std::invalid_argument("Matrix: negative dimension");
    mod_.value_u64();
    e_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(m), 0);
}

void smith_valuations_u64(std::uint64_t* a, int n, int m,
                          std::uint64_t p, int s, int* valuations) {
    const std::uint64_t r = pow_u64(p, static_cast<unsigned>(s));
    const int rank = std::min(n, m);
    auto at = [&](int i, int j) -> std::uint64_t& {
        return a[static_cast<std::size_t>(i) * m + j];
    };

    for (int d = 0; d < rank; ++d) {
        // minimal-valuation pivot, first in row-major order
        int pi = -1, pj = -1, pv = s;
        for (int i = d; i < n && pv > 0; ++i) {
            for (int j = d; j < m; ++j) {
                int v = valuation_u64(at(i, j), p, s);
                if (v < pv) {
                    pv = v; pi = i; pj = j;
                    if (v == 0) break;
                }
            }
        }
        if (pi < 0) {
            // the remaining block is zero mod p^s
            for (int k = d; k < rank; ++k) valuations[k] = s;
            return;
        }
        if (pi != d)
            for (int j = 0; j < m; ++j) std::swap(at(d, j), at(pi, j));
        if (pj != d)
            for (int i = 0; i < n; ++i) std::swap(at(i, d), at(i, pj));

        // pivot = unit * p^pv; minimality makes every remaining entry
        // divisible by p^pv, so a single multiplier clears each row
        const std::uint64_t ppv = pow_u64(p, static_cast<unsigned>(pv));
        const std::uint64_t unit = at(d, d) / ppv;
        const std::uint64_t uinv = invmod_u64(unit, r);
        for (int i = d + 1; i < n; ++i) {
            if (at(i, d) == 0) continue;
            std::uint64_t t = mulmod_u64(at(i, d) / ppv, uinv, r);
            for (int j = d; j < m; ++j) {
                std::uint64_t sub = mulmod_u64(t, at(d, j), r);
                at(i, j) = (at(i, j) + r - sub) % r;
            }
        }
        // column d below the pivot is now clear, so clearing row d only
        // touches row d itself
        for (int j = d + 1; j < m; ++j) at(d, j) = 0;
        valuations[d] = pv;
    }
}

SmithProfile smith_profile(const Matrix& a) {
    const int rank = std::min(a.rows(), a.cols());
    SmithProfile profile;
    profile.valuations.assign(static_cast<std::size_t>(rank), 0);
    if (rank == 0) return profile;
    std::vector<std::uint64_t> scratch = a.entries();
    smith_valuations_u64(scratch.data(), a.rows(), a.cols(),
                         a.modulus().p(), a.modulus().s(), profile.valuations.data());
    return profile;
}

long solution_exponent_u64(std::uint64_t* scratch, int n, int m,
                           std::uint64_t p, int s) {
    long j = static_cast<long>(s) * std::max(0, m - n);
    const int rank = std::min(n, m);
    if (rank > 0) {
        std::vector<int> vals(static_cast<std::size_t>(rank), 0);
        smith_valuations_u64(scratch, n, m, p, s, vals.data());
        for (int v : vals) j += v;
    }
    return j;
}

long solution_exponent(const Matrix& a) {
    std::vector<std::uint64_t> scratch = a.entries();
    return solution_exponent_u64(scratch.data(), a.rows(), a.cols(),
                                 a.modulus().p(), a.modulus().s());
}

Count solution_count(const Matrix& a) {
    return pow_count(a.modulus().p(), static_cast<unsigned long>(solution_exponent(a)));
}

std::uint64_t kernel_count_serial_u64(const std::uint64_t* cols, int n, int m,
                                      std::uint64_t r, std::uint64_t n_vectors) {
    return kernel_hits_range(cols, n, m, r, 0, n_vectors);
}

Count kernel_count_bruteforce(const Matrix& a, const Count& budget, int threads) {
    const std::uint64_t r = a.modulus().value_u64();
    const int n = a.rows(), m = a.cols();
    Count space = pow_count(a.modulus().p(),
                            static_cast<unsigned long>(a.modulus().s()) *
                                static_cast<unsigned long>(m));
    if (space > budget)
        throw BudgetExceeded("kernel enumeration needs " + space.get_str() +
                             " vectors, budget is " + budget.get_str());
    if (mpz_sizeinbase(space.get_mpz_t(), 2) > 62)
        throw BudgetExceeded("kernel enumeration of " + space.get_str() +
                             " vectors exceeds the enumerable range");
    const std::uint64_t total = mpz_get_ui(space.get_mpz_t());

    std::vector<std::uint64_t> cols(static_cast<std::size_t>(n) * m);
    for (int c = 0; c < m; ++c)
        for (int i = 0; i < n; ++i)
            cols[static_cast<std::size_t>(c) * n + i] = a.at(i, c);

    const int nt = effective_threads(threads);
    if (total < 4096 || nt <= 1)
        return Count(kernel_hits_range(cols.data(), n, m, r, 0, total));

    std::uint64_t grand = 0;
#pragma omp parallel num_threads(nt) reduction(+ : grand)
    {
        const std::uint64_t tid = static_cast<std::uint64_t>(omp_get_thread_num());
        const std::uint64_t tcount = static_cast<std::uint64_t>(omp_get_num_threads());
        const std::uint64_t base = total / tcount, extra = total % tcount;
        const std::uint64_t lo = base * tid + std::min(tid, extra);
        const std::uint64_t hi = lo + base + (tid < extra ? 1 : 0);
        grand += kernel_hits_range(cols.data(), n, m, r, lo, hi);
    }
    return Count(grand);
}

int det_valuation(const Matrix& a) {
    if (a.rows() != a.cols())
        throw NotSquare("det_valuation: matrix is " + std::to_string(a.rows()) +
                        "x" + std::to_string(a.cols()));
    const int n = a.rows();
    // Bareiss fraction-free elimination over the integers
    std::vector<Count> w(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w[static_cast<std::size_t>(i) * n + j] =
                Count(static_cast<unsigned long>(a.at(i, j)));
    auto at = [&](int i, int j) -> Count& { return w[static_cast<std::size_t>(i) * n + j]; };

    Count det = 1;
    int sign = 1;
    Count prev = 1;
    for (int k = 0; k < n; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) { swap_row = i; break; }
            if (swap_row < 0) { det = 0; break; }
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Count num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
        if (k == n - 1) det = sign > 0 ? at(k, k) : Count(-at(k, k));
    }

    Count residue = det % a.modulus().value();
    if (residue < 0) residue += a.modulus().value();
    if (residue == 0) return a.modulus().s();
    int v = 0;
    while (mpz_divisible_ui_p(residue.get_mpz_t(), a.modulus().p())) {
        mpz_divexact_ui(residue.get_mpz_t(), residue.get_mpz_t(), a.modulus().p());
        ++v;
    }
    return v;
}

bool gcd_det_correct(const Matrix& a) {
    if (a.rows() != a.cols())
        throw NotSquare("gcd_det_correct: matrix is " + std::to_string(a.rows()) +
                        "x" + std::to_string(a.cols()));
    Count gcd_value = pow_count(a.modulus().p(),
                                static_cast<unsigned long>(det_valuation(a)));
    return gcd_value == solution_count(a);
}

// --- JSON matrix format ---

namespace {

Count json_integer(const nlohmann::json& v, const char* field) {
    if (v.is_number_unsigned())
        return Count(static_cast<unsigned long>(v.get<std::uint64_t>()));
    if (v.is_number_integer())
        return Count(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_string()) {
        Count c;
        if (mpz_set_str(c.get_mpz_t(), v.get<std::string>().c_str(), 10) != 0)
            throw std::invalid_argument(std::string("matrix file: field '") + field +
                                        "' is not a decimal integer");
        return c;
    }
    throw std::invalid_argument(std::string("matrix file: field '") + field +
                                "' must be an integer");
}

} // namespace

Matrix matrix_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("matrix file: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("matrix file: top level must be an object");
    for (const auto& item : doc.items()) {
        const std::string& key = item.key();
        if (key != "p" && key != "s" && key != "n" && key != "m" && key != "entries")
            throw std::invalid_argument("matrix file: unexpected key '" + key + "'");
    }
    for (const char* key : {"p", "s", "n", "m", "entries"})
        if (!doc.contains(key))
            throw std::invalid_argument(std::string("matrix file: missing key '") + key + "'");

    Count p_value = json_integer(doc["p"], "p");
    Count s_value = json_integer(doc["s"], "s");
    Count n_value = json_integer(doc["n"], "n");
    Count m_value = json_integer(doc["m"], "m");
    if (!p_value.fits_ulong_p() || !s_value.fits_sint_p() ||
        !n_value.fits_sint_p() || !m_value.fits_sint_p())
        throw std::invalid_argument("matrix file: parameter out of range");

    const int s = static_cast<int>(s_value.get_si());
    const int n = static_cast<int>(n_value.get_si());
    const int m = static_cast<int>(m_value.get_si());
    if (n < 0 || m < 0)
        throw std::invalid_argument("matrix file: negative dimension");
    PrimePower modulus(mpz_get_ui(p_value.get_mpz_t()), s);

    const auto& entries = doc["entries"];
    if (!entries.is_array())
        throw std::invalid_argument("matrix file: 'entries' must be an array");
    if (entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(m))
        throw std::invalid_argument("matrix file: expected " +
                                    std::to_string(static_cast<std::size_t>(n) * m) +
                                    " entries, found " + std::to_string(entries.size()));
    std::vector<Count> values;
    values.reserve(entries.size());
    for (const auto& v : entries)
        values.push_back(json_integer(v, "entries"));
    return Matrix(modulus, n, m, values);
}

Matrix matrix_from_json(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return matrix_from_json(buf.str());
}

std::string matrix_to_json(const Matrix& a) {
    nlohmann::json doc;
    doc["p"] = a.modulus().p();
    doc["s"] = a.modulus().s();
    doc["n"] = a.rows();
    doc["m"] = a.cols();
    doc["entries"] = a.entries();
    return doc.dump();
}

} // namespace zps
