#pragma once

#include <stdexcept>
#include <string>

namespace hyperrod {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters outside the domain of a special function or identity.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A series did not meet its tolerance within the term cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    enum class Kind { invalid_spec, subdivision_limit, non_integrable, roundoff };

    QuadratureError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// The load violates |H(x)| < EJ somewhere on the rod.
class InfeasibleLoad : public Error {
public:
    InfeasibleLoad(const std::string& what, double ratio) : Error(what), ratio_(ratio) {}

    /// max |H|/EJ that triggered the error (NaN when not applicable).
    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

/// Feasible in principle, but within 1e-6 of the feasibility boundary.
class NearCriticalLoad : public InfeasibleLoad {
public:
    using InfeasibleLoad::InfeasibleLoad;
};

/// A root could not be bracketed (for the redundancy problems this means a
/// near-critical load).
class BracketError : public InfeasibleLoad {
public:
    using InfeasibleLoad::InfeasibleLoad;
};

}  // namespace hyperrod
