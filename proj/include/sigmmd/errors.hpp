#ifndef SIGMMD_ERRORS_HPP
#define SIGMMD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sigmmd {

/// Invalid scalar argument (negative dilation, truncation level out of range, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operands whose shapes do not fit together (dimension or level mismatch).
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Iterative numerics that failed to converge. Carries the last bracket.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), lo_(lo), hi_(hi) {}

    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sigmmd

#endif
