#pragma once

#include <stdexcept>
#include <string>

namespace geogate {

// Input outside the documented domain of an operation.
using InvalidArgument = std::invalid_argument;

class PreconditionViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class InternalConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class FitFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UndefinedResult : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AccuracyFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace geogate
