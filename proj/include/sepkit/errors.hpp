#pragma once

#include <stdexcept>
#include <string>

namespace sepkit {

// Base class for everything the toolkit throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input data or configuration (CLI exit code 1).
struct ValidationError : Error {
    using Error::Error;
};

// Filesystem / stream failures (CLI exit code 3).
struct IoError : Error {
    using Error::Error;
};

}  // namespace sepkit
