// zpscount: count matrices over Z_{p^s} by kernel size, verify the counting
// routes against each other, solve concrete systems and report the
// gcd-of-determinant probability.

#include "zps/closed_form.hpp"
#include "zps/errors.hpp"
#include "zps/matrix.hpp"
#include "zps/oracle.hpp"
#include "zps/probability.hpp"
#include "zps/qbinom.hpp"
#include "zps/recursion.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace zps;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct GlobalOptions {
    std::optional<std::uint64_t> budget_flag;
    std::optional<int> threads_flag;
    int digits = 12;

    OracleBudget budget() const {
        OracleBudget b;
        if (budget_flag) {
            b.max_matrices = Count(static_cast<unsigned long>(*budget_flag));
        } else if (const char* env = std::getenv("ZPS_COUNT_BUDGET")) {
            Count v;
            if (mpz_set_str(v.get_mpz_t(), env, 10) != 0 || v < 1)
                throw std::invalid_argument("ZPS_COUNT_BUDGET must be a positive integer");
            b.max_matrices = v;
        }
        return b;
    }

    int threads() const {
        if (threads_flag) return *threads_flag;
        if (const char* env = std::getenv("ZPS_COUNT_THREADS")) {
            int v = std::atoi(env);
            if (v < 1)
                throw std::invalid_argument("ZPS_COUNT_THREADS must be a positive integer");
            return v;
        }
        return 0; // library default
    }
};

std::uint64_t require_prime(std::uint64_t p) {
    if (!is_prime_u64(p))
        throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    return p;
}

json rational_record(const Rational& q, int digits) {
    return json{{"fraction", fraction_string(q)}, {"decimal", decimal_string(q, digits)}};
}

// --- count ---

int run_count(int n, int m, std::uint64_t p, int s, long j,
              const std::string& method, const GlobalOptions& opts) {
    require_prime(p);
    Recursion rec;
    Count value;
    std::string formula;
    if (method == "explicit") {
        Dispatch d = count_matrices(n, m, p, s, j, rec);
        value = d.value;
        formula = std::string(d.formula);
    } else if (method == "recursive") {
        value = rec.count(CountKey{n, m, p, s, j});
        formula = "recursion";
    } else if (method == "bruteforce") {
        value = bruteforce_table(n, m, p, s, opts.budget(), opts.threads()).get(j);
        formula = "enumeration";
    } else {
        throw std::invalid_argument("unknown method '" + method + "'");
    }
    json out{{"n", n}, {"m", m}, {"p", p}, {"s", s}, {"j", j},
             {"count", value.get_str()}, {"method", method}, {"formula", formula}};
    std::cout << out.dump() << "\n";
    return kExitOk;
}

// --- table ---

CountTable table_by_method(int n, int m, std::uint64_t p, int s,
                           const std::string& method, const GlobalOptions& opts,
                           Recursion& rec) {
    if (method == "recursive") return rec.table(n, m, p, s);
    if (method == "bruteforce") return bruteforce_table(n, m, p, s, opts.budget(), opts.threads());
    if (method != "explicit")
        throw std::invalid_argument("unknown method '" + method + "'");
    CountTable t;
    t.n = n;
    t.m = m;
    t.p = p;
    t.s = s;
    const long jmax = static_cast<long>(s) * m;
    for (long j = 0; j <= jmax; ++j) {
        Count c = count_matrices(n, m, p, s, j, rec).value;
        if (c != 0) t.counts.emplace(j, std::move(c));
    }
    return t;
}

int run_table(int n, int m, std::uint64_t p, int s, const std::string& method,
              const std::string& format, const GlobalOptions& opts) {
    require_prime(p);
    Recursion rec;
    CountTable t = table_by_method(n, m, p, s, method, opts, rec);
    if (format == "json") {
        json counts = json::object();
        for (const auto& [j, c] : t.counts) counts[std::to_string(j)] = c.get_str();
        json out{{"n", n}, {"m", m}, {"p", p}, {"s", s},
                 {"total", t.total().get_str()}, {"counts", counts}, {"method", method}};
        std::cout << out.dump() << "\n";
    } else if (format == "csv") {
        std::cout << "j,count\n";
        for (const auto& [j, c] : t.counts) std::cout << j << "," << c.get_str() << "\n";
    } else if (format == "plain") {
        std::size_t width = 1;
        for (const auto& [j, c] : t.counts) width = std::max(width, c.get_str().size());
        std::cout << "kernel-size counts for " << n << "x" << m << " matrices mod "
                  << p << "^" << s << " (method " << method << ")\n";
        for (const auto& [j, c] : t.counts) {
            std::string v = c.get_str();
            std::cout << "  j = " << j << "  "
                      << std::string(width - v.size(), ' ') << v << "\n";
        }
        std::cout << "  total " << t.total().get_str() << "\n";
    } else {
        throw std::invalid_argument("unknown format '" + format + "'");
    }
    return kExitOk;
}

// --- verify ---

std::vector<std::uint64_t> parse_primes(const std::string& list) {
    std::vector<std::uint64_t> primes;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw std::invalid_argument("empty entry in prime list");
        std::size_t pos = 0;
        unsigned long long v = std::stoull(item, &pos);
        if (pos != item.size())
            throw std::invalid_argument("bad prime '" + item + "'");
        primes.push_back(require_prime(v));
    }
    if (primes.empty())
        throw std::invalid_argument("prime list is empty");
    return primes;
}

int run_verify(int max_n, int max_m, int max_s, const std::string& primes_arg,
               bool with_bruteforce, const GlobalOptions& opts) {
    const auto primes = parse_primes(primes_arg);
    const OracleBudget budget = opts.budget();
    const int threads = opts.threads();
    bool all_ok = true;
    Recursion rec;
    for (std::uint64_t p : primes)
        for (int s = 1; s <= max_s; ++s)
            for (int n = 1; n <= max_n; ++n)
                for (int m = 1; m <= max_m; ++m) {
                    CountTable reference = rec.table(n, m, p, s);
                    bool point_ok = true;
                    for (long j = 0; j <= static_cast<long>(s) * m; ++j) {
                        Dispatch d = count_matrices(n, m, p, s, j, rec);
                        if (d.value != reference.get(j)) {
                            point_ok = false;
                            std::cout << "mismatch n=" << n << " m=" << m << " p=" << p
                                      << " s=" << s << " j=" << j
                                      << " recursive=" << reference.get(j).get_str()
                                      << " explicit=" << d.value.get_str()
                                      << " (formula " << d.formula << ")\n";
                        }
                    }
                    std::string checked = "explicit";
                    if (with_bruteforce) {
                        Count space = pow_count(p, static_cast<unsigned long>(s) *
                                                       static_cast<unsigned long>(n) *
                                                       static_cast<unsigned long>(m));
                        if (space <= budget.max_matrices) {
                            CountTable bf = bruteforce_table(n, m, p, s, budget, threads);
                            checked += ",bruteforce";
                            if (bf.counts != reference.counts) {
                                point_ok = false;
                                for (long j = 0; j <= static_cast<long>(s) * m; ++j)
                                    if (bf.get(j) != reference.get(j))
                                        std::cout << "mismatch n=" << n << " m=" << m
                                                  << " p=" << p << " s=" << s << " j=" << j
                                                  << " recursive=" << reference.get(j).get_str()
                                                  << " bruteforce=" << bf.get(j).get_str() << "\n";
                            }
                            Count vectors = pow_count(p, static_cast<unsigned long>(s) *
                                                             static_cast<unsigned long>(m));
                            if (vectors <= budget.max_vectors_per_matrix) {
                                CountTable bd = bruteforce_table_direct(n, m, p, s, budget, threads);
                                checked += ",direct";
                                if (bd.counts != reference.counts) {
                                    point_ok = false;
                                    for (long j = 0; j <= static_cast<long>(s) * m; ++j)
                                        if (bd.get(j) != reference.get(j))
                                            std::cout << "mismatch n=" << n << " m=" << m
                                                      << " p=" << p << " s=" << s << " j=" << j
                                                      << " recursive=" << reference.get(j).get_str()
                                                      << " direct=" << bd.get(j).get_str() << "\n";
                                }
                            }
                        }
                    }
                    std::cout << (point_ok ? "ok" : "FAIL") << " n=" << n << " m=" << m
                              << " p=" << p << " s=" << s << " [" << checked << "]\n";
                    all_ok = all_ok && point_ok;
                }
    std::cout << (all_ok ? "verify: all points agree\n" : "verify: mismatches found\n");
    return all_ok ? kExitOk : kExitMismatch;
}

// --- solve ---

int run_solve(const std::string& path, const GlobalOptions& opts) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open '" + path + "'");
    Matrix a = matrix_from_json(in);
    SmithProfile profile = smith_profile(a);
    const long j = solution_exponent(a);
    Count eta = pow_count(a.modulus().p(), static_cast<unsigned long>(j));
    json out{{"p", a.modulus().p()}, {"s", a.modulus().s()},
             {"n", a.rows()}, {"m", a.cols()},
             {"eta", json{{"base", a.modulus().p()}, {"exponent", j},
                          {"value", eta.get_str()}}},
             {"smith_valuations", profile.valuations}};
    if (a.rows() == a.cols()) {
        const int dv = det_valuation(a);
        Count gcd_value = pow_count(a.modulus().p(), static_cast<unsigned long>(dv));
        out["det_valuation"] = dv;
        out["gcd_det"] = gcd_value.get_str();
        out["gcd_matches_eta"] = gcd_value == eta;
    }
    (void)opts;
    std::cout << out.dump() << "\n";
    return kExitOk;
}

// --- prob ---

int run_prob(int n, std::uint64_t p, int s, const GlobalOptions& opts) {
    require_prime(p);
    Rational prob = prob_gcd_correct(n, p, s);
    Rational leading(1);
    leading -= Rational(1, pow_count(p, static_cast<unsigned long>(s) + 3));
    leading.canonicalize();
    Rational residual = leading - prob;
    residual.canonicalize();
    json out{{"n", n}, {"p", p}, {"s", s},
             {"probability", rational_record(prob, opts.digits)},
             {"leading", rational_record(leading, opts.digits)},
             {"residual", rational_record(residual, opts.digits)}};
    std::cout << out.dump() << "\n";
    return kExitOk;
}

// --- crt ---

struct Factor {
    std::uint64_t p;
    int s;
};

std::vector<Factor> parse_factors(const std::string& list) {
    std::vector<Factor> factors;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto caret = item.find('^');
        if (caret == std::string::npos || caret == 0 || caret + 1 == item.size())
            throw std::invalid_argument("factor '" + item + "' is not of the form p^s");
        std::size_t pos = 0;
        unsigned long long p = std::stoull(item.substr(0, caret), &pos);
        if (pos != caret)
            throw std::invalid_argument("bad prime in factor '" + item + "'");
        std::size_t pos2 = 0;
        const std::string stail = item.substr(caret + 1);
        int s = std::stoi(stail, &pos2);
        if (pos2 != stail.size() || s < 1)
            throw std::invalid_argument("bad exponent in factor '" + item + "'");
        factors.push_back({require_prime(p), s});
    }
    if (factors.empty())
        throw std::invalid_argument("factor list is empty");
    return factors;
}

std::vector<long> parse_exponents(const std::string& list) {
    std::vector<long> js;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long j = std::stol(item, &pos);
        if (item.empty() || pos != item.size())
            throw std::invalid_argument("bad exponent '" + item + "'");
        js.push_back(j);
    }
    return js;
}

int run_crt(int n, int m, const std::string& factors_arg, const std::string& j_arg) {
    const auto factors = parse_factors(factors_arg);
    const auto js = parse_exponents(j_arg);
    if (js.size() != factors.size())
        throw std::invalid_argument("need one exponent per factor");
    for (long j : js)
        if (j < 0)
            throw std::invalid_argument("exponents must be nonnegative");

    Recursion rec;
    std::vector<CountTable> tables;
    tables.reserve(factors.size());
    for (const Factor& f : factors)
        tables.push_back(rec.table(n, m, f.p, f.s));
    CrtSystem system(std::move(tables));

    json factor_list = json::array();
    for (std::size_t i = 0; i < factors.size(); ++i)
        factor_list.push_back(json{{"p", factors[i].p}, {"s", factors[i].s}, {"j", js[i]}});
    json out{{"n", n}, {"m", m}, {"factors", factor_list},
             {"modulus", system.modulus().get_str()},
             {"solution_count", system.solution_count(js).get_str()},
             {"count", system.count(js).get_str()}};
    std::cout << out.dump() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact kernel-size counts for matrices over Z_{p^s}"};
    app.require_subcommand(1);
    GlobalOptions opts;

    int n = 0, m = 0, s = 1, max_n = 1, max_m = 1, max_s = 1;
    long j = 0;
    std::uint64_t p = 2;
    std::string method = "explicit", format = "json", primes_arg, input_path;
    std::string factors_arg, j_arg;
    bool with_bruteforce = false;
    std::uint64_t budget_value = 0;
    int threads_value = 0;

    auto add_budget_flags = [&](CLI::App* cmd) {
        cmd->add_option("--budget", budget_value, "matrix enumeration budget (default 2^24)");
        cmd->add_option("--threads", threads_value, "worker count for enumeration");
    };

    CLI::App* cmd_count = app.add_subcommand("count", "count matrices with one kernel size");
    cmd_count->add_option("--n", n)->required();
    cmd_count->add_option("--m", m)->required();
    cmd_count->add_option("--p", p)->required();
    cmd_count->add_option("--s", s)->required();
    cmd_count->add_option("--j", j)->required();
    cmd_count->add_option("--method", method)->check(CLI::IsMember({"explicit", "recursive", "bruteforce"}));
    add_budget_flags(cmd_count);

    CLI::App* cmd_table = app.add_subcommand("table", "full kernel-size table");
    cmd_table->add_option("--n", n)->required();
    cmd_table->add_option("--m", m)->required();
    cmd_table->add_option("--p", p)->required();
    cmd_table->add_option("--s", s)->required();
    cmd_table->add_option("--method", method)->check(CLI::IsMember({"explicit", "recursive", "bruteforce"}));
    cmd_table->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "plain"}));
    add_budget_flags(cmd_table);

    CLI::App* cmd_verify = app.add_subcommand("verify", "sweep a grid and compare all routes");
    cmd_verify->add_option("--max-n", max_n)->required();
    cmd_verify->add_option("--max-m", max_m)->required();
    cmd_verify->add_option("--max-s", max_s)->required();
    cmd_verify->add_option("--primes", primes_arg, "comma-separated primes")->required();
    cmd_verify->add_flag("--with-bruteforce", with_bruteforce);
    add_budget_flags(cmd_verify);

    CLI::App* cmd_solve = app.add_subcommand("solve", "solution count of a concrete system");
    cmd_solve->add_option("--input", input_path, "matrix JSON file")->required();

    CLI::App* cmd_prob = app.add_subcommand("prob", "probability that gcd(det, p^s) is the solution count");
    cmd_prob->add_option("--n", n)->required();
    cmd_prob->add_option("--p", p)->required();
    cmd_prob->add_option("--s", s)->required();
    cmd_prob->add_option("--digits", opts.digits, "significant digits for decimals");

    CLI::App* cmd_crt = app.add_subcommand("crt", "compose counts for a composite modulus");
    cmd_crt->add_option("--n", n)->required();
    cmd_crt->add_option("--m", m)->required();
    cmd_crt->add_option("--factors", factors_arg, "comma-separated p^s factors")->required();
    cmd_crt->add_option("--j", j_arg, "comma-separated kernel exponents")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (cmd_count->count("--budget") || cmd_table->count("--budget") ||
            cmd_verify->count("--budget"))
            opts.budget_flag = budget_value;
        if (cmd_count->count("--threads") || cmd_table->count("--threads") ||
            cmd_verify->count("--threads"))
            opts.threads_flag = threads_value;

        if (app.got_subcommand(cmd_count))
            return run_count(n, m, p, s, j, method, opts);
        if (app.got_subcommand(cmd_table))
            return run_table(n, m, p, s, method, format, opts);
        if (app.got_subcommand(cmd_verify))
            return run_verify(max_n, max_m, max_s, primes_arg, with_bruteforce, opts);
        if (app.got_subcommand(cmd_solve))
            return run_solve(input_path, opts);
        if (app.got_subcommand(cmd_prob))
            return run_prob(n, p, s, opts);
        if (app.got_subcommand(cmd_crt))
            return run_crt(n, m, factors_arg, j_arg);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
