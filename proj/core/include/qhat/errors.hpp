#pragma once

#include <stdexcept>
#include <string>

namespace qhat {

/// Base class of every exception thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller supplied something outside an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a rational function hit a zero of its denominator.
class PoleError : public Error {
 public:
  PoleError(std::string factor, const std::string& what)
      : Error(what), factor_(std::move(factor)) {}
  const std::string& factor() const noexcept { return factor_; }

 private:
  std::string factor_;
};

/// An internal consistency check failed. Always indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// A divided-power matrix in a candidate lattice basis left Z[v,v^-1].
class UnsupportedLattice : public Error {
 public:
  using Error::Error;
};

}  // namespace qhat
