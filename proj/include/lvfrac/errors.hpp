#ifndef LVFRAC_ERRORS_HPP
#define LVFRAC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lvfrac {

// Argument outside the mathematical domain of an operation (z <= 0 for Gamma,
// sigma outside (0, 1], non-finite inputs, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Result would overflow, or the argument lies outside the range where the
// implementation is numerically trustworthy.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

class IterationLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A solver produced a non-finite state.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, double time, std::size_t step)
        : std::runtime_error(what), time_(time), step_(step) {}

    double time() const noexcept { return time_; }
    std::size_t step() const noexcept { return step_; }

private:
    double time_;
    std::size_t step_;
};

// Inconsistent configuration (H1 violated, C != 1 for the Mickens region, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// API misuse: mismatched schemes, disjoint time ranges, degenerate input.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace lvfrac

#endif // LVFRAC_ERRORS_HPP
