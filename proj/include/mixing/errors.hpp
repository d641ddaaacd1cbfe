#pragma once

#include <stdexcept>
#include <string>

namespace mixing {

/// Parameter outside an operation's documented domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A theorem/lemma hypothesis does not hold for the supplied instance.
class HypothesisError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Enumeration would exceed the configured state-space cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The chain restricted to the support of pi is not irreducible.
class NonErgodic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked invariant or bound was violated at run time.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mixing
