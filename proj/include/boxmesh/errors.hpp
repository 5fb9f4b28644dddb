#pragma once

#include <stdexcept>
#include <string>

namespace boxmesh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or malformed geometry handed to an operation.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A point was queried outside the box or domain it must lie in.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A target function produced a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A function violates its declared Hessian-sign signature.
class SignatureError : public Error {
public:
    using Error::Error;
};

/// Flooring the per-subregion budget left some subregion without boxes.
class InfeasibleBudgetError : public Error {
public:
    using Error::Error;
};

/// Configuration that cannot be satisfied (e.g. no admissible m_N found).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace boxmesh
