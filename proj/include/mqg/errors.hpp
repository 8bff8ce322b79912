#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mqg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Breadth-first closure grew past its cap; the generated subgroup is
/// infinite or too large for the caller's purpose.
class ClosureExceedsCap : public Error {
 public:
  using Error::Error;
};

/// A formal infinite sum could not be reduced to finite support.
class UnlocalizedSum : public Error {
 public:
  using Error::Error;
};

/// A surgery normalization constant vanished.
class NotNormalizable : public Error {
 public:
  using Error::Error;
};

class CorollaryInapplicable : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class BackendMismatch : public Error {
 public:
  BackendMismatch() : Error("operands belong to different group backends") {}
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A parsed object violates a structural invariant; the message names it.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace mqg
