#pragma once

#include <stdexcept>
#include <string>

namespace rho {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid model parameters or arguments outside an operation's contract.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A coordinate lies outside the open spatial domain (-R, R).
class OutsideDomain : public Error {
public:
    using Error::Error;
};

/// E < m: no classical motion is possible.
class ForbiddenEnergy : public Error {
public:
    using Error::Error;
};

/// lambda > 0 and E above the oscillation threshold: the orbit is open.
class OpenMotion : public Error {
public:
    using Error::Error;
};

/// A numerical trajectory approached the lambda < 0 horizon.
class HorizonApproach : public Error {
public:
    using Error::Error;
};

/// Series, quadrature or step control failed to reach the requested tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// The requested quantum state is not square integrable.
class NotNormalizable : public Error {
public:
    using Error::Error;
};

}  // namespace rho
