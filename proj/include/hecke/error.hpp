#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data: a stated invariant of a domain type fails.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A structural guarantee that the pipeline promises to verify did not hold
// (e.g. a theta wall that is not a wall of the ambient arrangement).
class CertificateError : public Error {
public:
    explicit CertificateError(const std::string& msg) : Error(msg) {}
};

} // namespace hecke
