/**
 * @file error.hpp
 * @brief Exception types shared by the solver library.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace mhdcn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller supplied a value outside an operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A linear solve did not meet its residual contract.
class SolverFailure : public Error {
public:
    using Error::Error;
};

/// Command-line or config-file problem; the message is shown with the usage text.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace mhdcn
