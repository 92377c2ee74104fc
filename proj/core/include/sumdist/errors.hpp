#ifndef SUMDIST_ERRORS_HPP
#define SUMDIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sumdist {

// Argument outside the mathematical domain of a function (p <= 0 for an
// inverse cdf, nu <= 0, |rho| >= 1, ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

// Structurally invalid configuration (grid that does not close, bad flag
// combination, empty sample set).
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// A distribution table does not bracket the requested probability level.
class QuantileOutOfRange : public std::out_of_range {
   public:
    using std::out_of_range::out_of_range;
};

// Iterative routine failed to converge.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace sumdist

#endif  // SUMDIST_ERRORS_HPP
