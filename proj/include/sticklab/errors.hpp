#pragma once
#include <stdexcept>
#include <string>

namespace sticklab {

// exit code 1
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exit code 2: an identity that must hold exactly did not
struct TheoremViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exit code 3: a size or time limit was hit
struct GuardrailError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sticklab
