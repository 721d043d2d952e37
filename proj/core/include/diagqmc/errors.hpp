#pragma once

#include <stdexcept>
#include <string>

namespace diagqmc {

// Invalid parameters are reported with std::invalid_argument directly.

/// Raised when an integrand is evaluated on its singular locus.
class SingularEvaluation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an estimator is asked to handle an integrand family it does not support.
class UnsupportedIntegrand : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a log-log fit is requested on data containing a zero error.
class DegenerateFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a reference quadrature fails to converge within its refinement budget.
class OracleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace diagqmc
