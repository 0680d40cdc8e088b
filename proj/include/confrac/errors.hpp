#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confrac {

/// Base of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied a value outside the admissible range (e.g. alpha not in (0, 1]).
class out_of_range_error : public error {
public:
    out_of_range_error(const std::string& what, double value)
        : error(what), value_(value) {}
    double value() const noexcept { return value_; }

private:
    double value_;
};

/// Step size does not divide the horizon.
class non_commensurate_error : public error {
public:
    using error::error;
};

/// Evaluation point outside the region where an operator or solution is defined.
class domain_error : public error {
public:
    using error::error;
};

class length_mismatch_error : public error {
public:
    using error::error;
};

/// Arguments that are well-typed but inconsistent (e.g. classical method with alpha != 1).
class invalid_argument_error : public error {
public:
    using error::error;
};

/// A solver produced a non-finite or runaway value.
class blow_up_error : public error {
public:
    blow_up_error(const std::string& what, std::size_t step)
        : error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Endpoint error hit the floating-point floor, so a convergence order is undefined.
class degenerate_order_error : public error {
public:
    using error::error;
};

class io_error : public error {
public:
    using error::error;
};

}  // namespace confrac
