#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latticelab {

/// Base class of every error raised by the library.  Derived types mirror
/// the failure kinds callers branch on; the message is for humans.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CycleError : public Error {
public:
  using Error::Error;
};

class InvalidOrder : public Error {
public:
  using Error::Error;
};

class SizeLimit : public Error {
public:
  SizeLimit(const std::string& what, std::size_t bound)
      : Error(what + " (bound " + std::to_string(bound) + ")"), bound_(bound) {}
  std::size_t bound() const noexcept { return bound_; }

private:
  std::size_t bound_;
};

class NotSemilattice : public Error {
public:
  NotSemilattice(std::size_t x, std::size_t y)
      : Error("elements " + std::to_string(x) + " and " + std::to_string(y) +
              " have no least upper bound"),
        x_(x), y_(y) {}
  std::size_t x() const noexcept { return x_; }
  std::size_t y() const noexcept { return y_; }

private:
  std::size_t x_, y_;
};

class NotLattice : public Error {
public:
  using Error::Error;
};

class NotOrdinal : public Error {
public:
  using Error::Error;
};

class Unclassifiable : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_, column_;
};

class ModeUnsupported : public Error {
public:
  using Error::Error;
};

class ClaimViolation : public Error {
public:
  using Error::Error;
};

class PreconditionFailed : public Error {
public:
  using Error::Error;
};

class NotJoinPreserving : public Error {
public:
  NotJoinPreserving(std::size_t x, std::size_t y)
      : Error("join of " + std::to_string(x) + " and " + std::to_string(y) + " is not preserved"),
        x_(x), y_(y) {}
  std::size_t x() const noexcept { return x_; }
  std::size_t y() const noexcept { return y_; }

private:
  std::size_t x_, y_;
};

class NotPowersetEmbeddable : public Error {
public:
  using Error::Error;
};

class ChainNotStrict : public Error {
public:
  using Error::Error;
};

/// A consistency check inside a multi-step construction failed.  `check()`
/// names the step so reports can point at it.
class ConstructionInvariantViolated : public Error {
public:
  ConstructionInvariantViolated(std::string check, const std::string& what)
      : Error(check + ": " + what), check_(std::move(check)) {}
  const std::string& check() const noexcept { return check_; }

private:
  std::string check_;
};

}  // namespace latticelab
