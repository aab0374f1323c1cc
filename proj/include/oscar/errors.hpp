// errors.hpp — exception taxonomy shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace oscar {

// Invalid input structure: malformed config file, bad field value, inconsistent dimensions.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A symbolic manipulation hit an unsupported or inconsistent request.
struct DerivationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// integrate_phase met a term whose phase is slow under the active resonance
// declaration; the caller must average first.
struct SecularTermError : DerivationError {
  using DerivationError::DerivationError;
};

// Frequencies fall inside the ambiguous zone between the non-resonant and the
// resonant branch; the caller must widen the gap or declare the resonance.
struct NearResonanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric guardrail violations.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An integration step violated a trace/positivity budget; reduce dt or enlarge the basis.
struct StepRejected : NumericError {
  using NumericError::NumericError;
};

// A decay fit has too little structure to determine its parameters.
struct FitIllConditioned : NumericError {
  using NumericError::NumericError;
};

// An iterative solve ran out of its step budget before meeting tolerance.
struct NoConvergence : NumericError {
  using NumericError::NumericError;
};

// A discretized-bath run was asked to integrate past its Poincaré recurrence horizon.
struct RecurrenceHorizonExceeded : NumericError {
  using NumericError::NumericError;
};

}  // namespace oscar
