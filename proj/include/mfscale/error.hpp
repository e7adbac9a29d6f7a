#pragma once

#include <stdexcept>
#include <string>

namespace mfscale {

/// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorCategory {
    usage,      // bad parameters or configuration
    data,       // input data unsuitable for the requested analysis
    numerical,  // an algorithm failed to converge or produced an invalid result
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string kind, const std::string& message)
        : std::runtime_error(message), category_(category), kind_(std::move(kind)) {}

    ErrorCategory category() const noexcept { return category_; }
    /// Short machine-readable tag, e.g. "domain" or "fit_range".
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorCategory category_;
    std::string kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(ErrorCategory::usage, "domain", msg) {}
};

struct FitRangeError : Error {
    explicit FitRangeError(const std::string& msg) : Error(ErrorCategory::usage, "fit_range", msg) {}
};

struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& msg)
        : Error(ErrorCategory::data, "insufficient_data", msg) {}
};

struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error(ErrorCategory::data, "degenerate", msg) {}
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line)
        : Error(ErrorCategory::data, "parse", msg), line_(line) {}
    /// 1-based line number, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct NoOverlapError : Error {
    explicit NoOverlapError(const std::string& msg) : Error(ErrorCategory::data, "no_overlap", msg) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& msg) : Error(ErrorCategory::numerical, "numerical", msg) {}
};

struct NonDecayingPeakError : Error {
    explicit NonDecayingPeakError(const std::string& msg)
        : Error(ErrorCategory::numerical, "non_decaying_peak", msg) {}
};

/// Fitted stability index outside (0, 2]. Carries the raw estimate for reporting.
struct StabilityError : Error {
    StabilityError(const std::string& msg, double raw_mu, double raw_slope)
        : Error(ErrorCategory::numerical, "stability_violation", msg), raw_mu(raw_mu), raw_slope(raw_slope) {}
    double raw_mu;
    double raw_slope;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(ErrorCategory::usage, "config", msg) {}
};

struct NotComputedError : Error {
    explicit NotComputedError(const std::string& msg) : Error(ErrorCategory::usage, "not_computed", msg) {}
};

}  // namespace mfscale
