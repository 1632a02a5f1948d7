#ifndef MILLWRIGHT_ERRORS_HPP
#define MILLWRIGHT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace millwright {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroInterval : Error {
    DivisionByZeroInterval() : Error("division by an interval containing zero") {}
};

// Raised when doubling the working precision hits the configured cap,
// or when an exact integer value would exceed the bit budget.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

struct SequenceExhausted : Error {
    explicit SequenceExhausted(const std::string& msg) : Error(msg) {}
};

// A bound interval is too wide to certify a comparison; the caller is
// expected to refine precision and retry.
struct IndeterminateBound : Error {
    explicit IndeterminateBound(const std::string& msg) : Error(msg) {}
};

// The step inequality v_{n+1} < h_n(v_n + 1) - 1 failed, certified: the gap
// hypothesis does not hold for this source and gap function at this point.
struct GapViolation : Error {
    GapViolation(const std::string& msg, unsigned long n, std::string v, std::string v_next)
        : Error(msg), step_n(n), v_n(std::move(v)), v_next_(std::move(v_next)) {}
    unsigned long step_n;
    std::string v_n;
    std::string v_next_;
};

struct SeedNotFound : Error {
    explicit SeedNotFound(const std::string& msg) : Error(msg) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& msg) : Error(msg) {}
};

struct NotFound : Error {
    explicit NotFound(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace millwright

#endif
