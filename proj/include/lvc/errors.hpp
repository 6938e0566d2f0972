// Error hierarchy shared by all modules.
//
// Two families matter to callers: RegimeError (the request needs the bistable
// strong-competition regime and the parameters are not in it) and
// NumericalError (an algorithm failed to meet its accuracy or progress
// contract). Everything else is InvalidInput. The CLI maps the families to
// distinct exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace lvc {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or out-of-range caller input (nonpositive rates, bad grids, ...).
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

struct RegimeError : Error {
    explicit RegimeError(const std::string& msg) : Error(msg) {}
};

// alpha < 1 or beta < 1: no interior saddle, no separatrix.
struct NotStrongCompetition : RegimeError {
    explicit NotStrongCompetition(const std::string& msg) : RegimeError(msg) {}
};

// alpha == 1 or beta == 1 exactly: degenerate boundary case, rejected rather
// than treated as a limit.
struct BoundaryRegime : RegimeError {
    explicit BoundaryRegime(const std::string& msg) : RegimeError(msg) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// Query outside the domain covered by a computed object.
struct OutOfDomain : NumericalError {
    explicit OutOfDomain(const std::string& msg) : NumericalError(msg) {}
};

// Adaptive quadrature hit its subdivision depth limit before converging.
struct QuadratureFailure : NumericalError {
    explicit QuadratureFailure(const std::string& msg) : NumericalError(msg) {}
};

// A separatrix branch left its confinement rectangle or failed to reach its
// endpoint.
struct ManifoldEscape : NumericalError {
    explicit ManifoldEscape(const std::string& msg) : NumericalError(msg) {}
};

// Bisection oracle could not produce a decidable bracket.
struct OracleStall : NumericalError {
    explicit OracleStall(const std::string& msg) : NumericalError(msg) {}
};

// Variational-equation coefficient evaluation hit a vanishing denominator
// away from its removable point.
struct SingularCoefficient : NumericalError {
    explicit SingularCoefficient(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace lvc
