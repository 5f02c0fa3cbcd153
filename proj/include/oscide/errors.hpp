#pragma once

#include <stdexcept>
#include <string>

namespace oscide {

// Base for all toolkit errors. `code()` is the stable machine-readable tag
// the CLI prints as its final stderr line (`ERROR <code>: <message>`).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error("DOMAIN", m) {}
};

struct SingularMatrix : Error {
    SingularMatrix(const std::string& m, int pivot) : Error("SINGULAR", m), pivot_index(pivot) {}
    int pivot_index;
};

struct NonConvergent : Error {
    explicit NonConvergent(const std::string& m) : Error("NONCONVERGENT", m) {}
};

struct Infeasible : Error {
    explicit Infeasible(const std::string& m) : Error("INFEASIBLE", m) {}
};

struct NoRoot : Error {
    explicit NoRoot(const std::string& m) : Error("NOROOT", m) {}
};

struct OutOfRange : Error {
    explicit OutOfRange(const std::string& m) : Error("OUTOFRANGE", m) {}
};

struct StepTooLarge : Error {
    explicit StepTooLarge(const std::string& m) : Error("STEPTOOLARGE", m) {}
};

struct NonFinite : Error {
    NonFinite(const std::string& m, double t) : Error("NONFINITE", m), time(t) {}
    double time;
};

struct NotOscillating : Error {
    explicit NotOscillating(const std::string& m) : Error("NOTOSCILLATING", m) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("PARSE", m) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& m) : Error("VALIDATION", m) {}
};

struct IoError : Error {
    explicit IoError(const std::string& m) : Error("IO", m) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& m) : Error("USAGE", m) {}
};

} // namespace oscide
