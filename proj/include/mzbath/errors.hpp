// errors.hpp - exception types raised by the mzbath library

#pragma once

#include <stdexcept>
#include <string>

namespace mzbath {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Density-matrix validation
struct TraceError : Error {
    using Error::Error;
};
struct PositivityError : Error {
    using Error::Error;
};
// ker(sigma) intersects supp(rho): relative entropy is infinite
struct SupportError : Error {
    using Error::Error;
};

// Argument outside the domain of a formula (negative frequency, radicand > 1, ...)
struct DomainError : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    using Error::Error;
};

struct StepSizeError : Error {
    using Error::Error;
};

// An internal consistency check between two independent computations failed.
struct CrossCheckError : Error {
    using Error::Error;
};

// Invalid run or interferometer configuration; `field` names the offending key.
struct ConfigError : Error {
    ConfigError(std::string field_name, const std::string& message)
        : Error(field_name.empty() ? message : field_name + ": " + message),
          field(std::move(field_name)) {}
    std::string field;
};

}  // namespace mzbath
