#pragma once

#include <stdexcept>
#include <string>

namespace c1cpg {

// Degree below the minimum a basis family or scheme supports.
struct InvalidDegreeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Structurally inconsistent input (non-monotone nodes, degenerate domain, ...).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Point outside the interval/domain an object is defined on.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A requested quantity needs capabilities the supplied evaluator lacks.
struct CapabilityError : std::logic_error {
  using std::logic_error::logic_error;
};

// Evaluation at a singular point of the model (e.g. gravitational origin).
struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Unknown registry id.
struct LookupError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Malformed or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A nonlinear time step failed to converge (or its rhs evaluator threw).
// interval_index is -1 when the failing step was solved standalone.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(const std::string& msg, int interval_index, int iterations,
              double last_update)
      : std::runtime_error(msg),
        interval_index(interval_index),
        iterations(iterations),
        last_update(last_update) {}

  int interval_index;
  int iterations;
  double last_update;
};

}  // namespace c1cpg
