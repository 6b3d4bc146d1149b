#ifndef ZPS_ERRORS_HPP
#define ZPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zps {

// Enumeration would exceed the caller-supplied work cap.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NotSquare : std::invalid_argument {
    explicit NotSquare(const std::string& what) : std::invalid_argument(what) {}
};

// Closed form asked for a shape outside its domain (typically n < m).
struct ShapeUnsupported : std::invalid_argument {
    explicit ShapeUnsupported(const std::string& what) : std::invalid_argument(what) {}
};

// Closed form asked for a parameter range it does not cover (typically j >= s).
struct RangeUnsupported : std::invalid_argument {
    explicit RangeUnsupported(const std::string& what) : std::invalid_argument(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

// A sum that must be an integer came out with a nontrivial denominator.
struct IntegralityViolation : std::logic_error {
    explicit IntegralityViolation(const std::string& what) : std::logic_error(what) {}
};

struct DuplicatePrime : std::invalid_argument {
    explicit DuplicatePrime(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace zps

#endif
