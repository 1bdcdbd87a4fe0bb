#pragma once

#include <stdexcept>
#include <string>

namespace walkgrowth {

/// Malformed step-set text.
class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation that needs a dimension the step set does not have.
class unsupported_dimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hyperplane normal that is zero, has a negative component, or is not unit length.
class invalid_normal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A convex objective with no interior minimizer (e.g. a one-signed exponent set).
class no_critical_point : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative solver that exhausted its budget without meeting tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration state space larger than the configured cap.
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A model that fails the non-triviality test required by the operation.
class inessential_model : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bound that cannot be produced for this model.
class bound_unavailable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A lower bound exceeding an upper bound: some bound computation is wrong.
class integrity_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace walkgrowth
