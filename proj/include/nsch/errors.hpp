// errors.hpp: typed error hierarchy for the solver library.

#ifndef NSCH_ERRORS_HPP
#define NSCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nsch {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad grid parameters (odd n, n too small, nonpositive box length, bad dim).
struct GridError : Error {
    using Error::Error;
};

// Operands living on different grids were combined.
struct MixedGridError : Error {
    using Error::Error;
};

// A negative fractional power was requested on a field whose mean is not
// negligible; |k|^{2*delta} is singular at k = 0.
struct NegativePowerOnNonzeroMean : Error {
    double zero_mode;
    double tolerance;
    NegativePowerOnNonzeroMean(double zm, double tol)
        : Error("fractional power < 0 on field with nonzero mean (|zero mode| = " +
                std::to_string(zm) + ", tolerance = " + std::to_string(tol) + ")"),
          zero_mode(zm),
          tolerance(tol) {}
};

// Non-finite values appeared during time stepping.
struct StepDiverged : Error {
    double time;
    long step;
    StepDiverged(double t, long s)
        : Error("time step produced non-finite values at t = " + std::to_string(t) +
                " (step " + std::to_string(s) + ")"),
          time(t),
          step(s) {}
};

// An exponent tuple violates the scaling relation of an inequality checker.
struct ExponentError : Error {
    double residual;
    ExponentError(const std::string& what, double res)
        : Error(what + " (relation residual = " + std::to_string(res) + ")"), residual(res) {}
};

// Configuration file problems; carries the offending field path.
struct ConfigError : Error {
    std::string field;
    ConfigError(const std::string& fld, const std::string& msg)
        : Error("config error at '" + fld + "': " + msg), field(fld) {}
};

struct DomainError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace nsch

#endif
