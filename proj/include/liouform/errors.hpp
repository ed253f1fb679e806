#pragma once

#include <stdexcept>
#include <string>

namespace liouform {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDimensionError : Error {
    using Error::Error;
};

struct InvalidSpecError : Error {
    using Error::Error;
};

// A coefficient matrix whose antisymmetric part is not Jtilde/2.
struct NotLiouvillianError : Error {
    double residual;
    NotLiouvillianError(const std::string& what, double res)
        : Error(what), residual(res) {}
};

struct SingularTransformError : Error {
    using Error::Error;
};

struct UnsupportedMethodError : Error {
    using Error::Error;
};

// Evaluation outside a system's domain (e.g. Kepler at the collision set).
struct SingularityError : Error {
    using Error::Error;
};

struct SolverFailureError : Error {
    double last_residual;
    int iterations;
    SolverFailureError(const std::string& what, double res, int iters)
        : Error(what), last_residual(res), iterations(iters) {}
};

struct StepSingularError : Error {
    double step_size;
    StepSingularError(const std::string& what, double h)
        : Error(what), step_size(h) {}
};

}  // namespace liouform
