#pragma once

#include <stdexcept>
#include <string>

namespace weil {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// exit codes, so new errors should derive from one of the three families
/// below rather than from Error directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition or schema (exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Valid input that the tool deliberately does not handle (exit code 3).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A verification whose hypotheses hold but whose conclusion fails (exit 1).
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

class IncompatibleMorphism : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotFixed : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class IndexOutOfRange : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotExact : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotEquivariant : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidFactor : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class HasseBoundViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class PPartMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ShapeMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class RankMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class UnsupportedVariant : public Unsupported {
 public:
  using Unsupported::Unsupported;
};

class DegenerateDivisible : public Unsupported {
 public:
  using Unsupported::Unsupported;
};

class AmbiguousTorsion : public Unsupported {
 public:
  using Unsupported::Unsupported;
};

/// Raised when a cup-e computation needs a can-map with finite kernel and
/// cokernel at some degree and that degree fails the condition.
class NotSemisimple : public Unsupported {
 public:
  NotSemisimple(int degree, const std::string& what)
      : Unsupported(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

class SeriesMismatch : public VerificationFailure {
 public:
  SeriesMismatch(int order, const std::string& what)
      : VerificationFailure(what), order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

}  // namespace weil
