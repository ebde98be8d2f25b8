#pragma once

#include <stdexcept>
#include <string>

namespace ssafs {

/// Base of every error raised by the library. Each subclass maps onto one
/// process exit code in the CLI (see exit_code()).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or inconsistent configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed, missing or unusable input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// File system failures (unreadable input, unwritable output).
class IoError : public DataError {
public:
    using DataError::DataError;
};

/// A caller broke a documented precondition (shape mismatch, out-of-range value).
class ContractError : public Error {
public:
    using Error::Error;
};

/// An operation was invoked on an object in the wrong state.
class StateError : public Error {
public:
    using Error::Error;
};

/// Non-finite values produced during optimization or training.
class NumericError : public Error {
public:
    using Error::Error;
};

/// 1 usage/config, 2 data, 3 internal/numeric.
inline int exit_code(const std::exception& e) noexcept
{
    if (dynamic_cast<const ConfigError*>(&e) != nullptr) {
        return 1;
    }
    if (dynamic_cast<const DataError*>(&e) != nullptr) {
        return 2;
    }
    return 3;
}

}  // namespace ssafs
