#pragma once

#include <stdexcept>
#include <string>

namespace mvdp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotDecidable : public Error {
 public:
  using Error::Error;
};

/// Raised by step() for an infeasible, missing or extra action entry.
/// `entity` names the offender, e.g. "request:3" or "vehicle:0".
class RejectedAction : public Error {
 public:
  RejectedAction(std::string entity, const std::string& what)
      : Error(entity + ": " + what), entity_(std::move(entity)) {}
  const std::string& entity() const noexcept { return entity_; }

 private:
  std::string entity_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mvdp
