#pragma once

#include <stdexcept>
#include <string>

namespace cleconn {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument values (outside the mathematical domain of an operation).
class DomainError : public Error {
public:
    using Error::Error;
};

// Parameter combinations where a formula degenerates (poles, integer gaps).
class ParameterError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    using Error::Error;
};

class AccuracyLossError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

class NonTerminationError : public Error {
public:
    using Error::Error;
};

class ResourceError : public Error {
public:
    using Error::Error;
};

class ConfigurationError : public Error {
public:
    using Error::Error;
};

class StatisticsError : public Error {
public:
    using Error::Error;
};

}  // namespace cleconn
