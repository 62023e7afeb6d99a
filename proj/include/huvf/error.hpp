#pragma once

#include <stdexcept>
#include <string>

namespace huvf {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A point, parameter, or request lies outside the mathematical domain of an
/// operation (wrong ambient space, chart-singular locus, field singularity,
/// parameter outside a required interval, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// A numerical procedure failed to converge or produced non-finite values.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

/// Malformed command-line usage (unknown family, bad parameter list, ...).
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what) {}
};

} // namespace huvf
