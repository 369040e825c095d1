#pragma once

#include <stdexcept>
#include <string>

namespace newtonosc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input documents (phase files, cutoff specs, configs).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The phase is degenerate on some compact face; carries that face.
class DegeneratePhaseError : public Error {
 public:
  DegeneratePhaseError(const std::string& what, std::size_t face)
      : Error(what), face_(face) {}
  std::size_t face() const noexcept { return face_; }

 private:
  std::size_t face_;
};

/// Quadrature refused because the requested accuracy needs too many nodes.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// Every row of a lambda sweep was rejected.
class SweepFailureError : public Error {
 public:
  using Error::Error;
};

/// A fit cannot be computed on the supplied data.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace newtonosc
