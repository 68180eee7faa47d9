#pragma once

#include <stdexcept>
#include <string>

namespace lfmax {

// Exit codes used by the CLI map onto these categories:
// config -> 2, domain/numeric/format/resource -> 3, integrity -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct NumericError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct ResourceError : Error {
    using Error::Error;
};

struct IntegrityError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace lfmax
