#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace noma_sic {

// Invalid argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

class DegenerateChannelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Rejection sampling would need an impractical number of draws.
class FeasibilityError : public std::runtime_error {
public:
    FeasibilityError(const std::string& what, double acceptance)
        : std::runtime_error(what), acceptance_(acceptance) {}
    double acceptance() const noexcept { return acceptance_; }

private:
    double acceptance_;
};

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, std::vector<double> best_params, double rms)
        : std::runtime_error(what), best_params_(std::move(best_params)), rms_(rms) {}
    const std::vector<double>& best_params() const noexcept { return best_params_; }
    double rms() const noexcept { return rms_; }

private:
    std::vector<double> best_params_;
    double rms_;
};

// A PepContext does not match the configuration an operation requires.
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A named closed-form term came out non-finite.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& term, double value)
        : std::runtime_error("non-finite term '" + term + "' = " + std::to_string(value)), term_(term) {}
    const std::string& term() const noexcept { return term_; }

private:
    std::string term_;
};

// A composed probability left [0,1].
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace noma_sic
