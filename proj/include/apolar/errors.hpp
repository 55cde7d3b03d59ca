#pragma once

#include <stdexcept>
#include <string>

namespace apolar {

/// Caller supplied data that violates an operation's precondition
/// (mismatched tables, wrong degree, inhomogeneous input, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when evidence or a certificate fails to re-verify. Seeing one of
/// these means a bug in a certificate producer, never bad user input.
class CertificateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace apolar
