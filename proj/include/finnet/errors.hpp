#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace finnet {

// Precondition violated by the caller (bad parameter combination).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A series or quadrature failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A bounded resource (index-matrix rows, term counts) would be exceeded.
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Rejection placement ran out of attempts before all mobiles were placed.
class SaturationError : public std::runtime_error {
public:
    SaturationError(std::size_t placed, std::size_t requested, const std::string& what)
        : std::runtime_error(what), placed_(placed), requested_(requested) {}

    std::size_t placed() const noexcept { return placed_; }
    std::size_t requested() const noexcept { return requested_; }

private:
    std::size_t placed_;
    std::size_t requested_;
};

}  // namespace finnet
