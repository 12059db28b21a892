#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace epwind {

/// Broad failure class; the CLI maps these onto exit codes 1, 2 and 3.
enum class ErrorCategory { Config, Numeric, Geometry };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class SyntaxError : public Error {
public:
    SyntaxError(int line, int column, const std::string& message)
        : Error(ErrorCategory::Config, "syntax error at " + std::to_string(line) + ":" +
                                           std::to_string(column) + ": " + message),
          line_(line), column_(column), message_(message) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

class NonSquareError : public Error {
public:
    explicit NonSquareError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

class DegreeLimitError : public Error {
public:
    explicit DegreeLimitError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

class DimensionLimitError : public Error {
public:
    explicit DimensionLimitError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

class NonConvergence : public Error {
public:
    explicit NonConvergence(const std::string& what) : Error(ErrorCategory::Numeric, what) {}
};

/// Continuity matching could not separate the best assignment from the runner-up.
class MatchingAmbiguous : public Error {
public:
    explicit MatchingAmbiguous(const std::string& what) : Error(ErrorCategory::Numeric, what) {}
};

class RadiusTooLarge : public Error {
public:
    explicit RadiusTooLarge(const std::string& what) : Error(ErrorCategory::Numeric, what) {}
};

/// The discriminant vanishes identically: the spectrum is degenerate everywhere.
class DegenerateFamily : public Error {
public:
    explicit DegenerateFamily(const std::string& what) : Error(ErrorCategory::Numeric, what) {}
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(ErrorCategory::Numeric, what) {}
};

class StepCollapse : public Error {
public:
    explicit StepCollapse(const std::string& what) : Error(ErrorCategory::Geometry, what) {}
};

class DegenerateCrossing : public Error {
public:
    explicit DegenerateCrossing(const std::string& what) : Error(ErrorCategory::Geometry, what) {}
};

/// Loop violates the genericity requirements; carries a suggested perturbation size.
class NonGenericLoop : public Error {
public:
    NonGenericLoop(const std::string& what, double suggested_perturbation)
        : Error(ErrorCategory::Geometry, what), suggested_perturbation_(suggested_perturbation) {}

    double suggested_perturbation() const noexcept { return suggested_perturbation_; }

private:
    double suggested_perturbation_;
};

std::string format_complex(std::complex<double> z, int digits = 6);

}  // namespace epwind
