#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vctl {

/// Failure classes surfaced to the command line as distinct exit codes.
enum class ErrorClass { config = 2, numerical = 3, io = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const noexcept { return class_; }
  int exit_code() const noexcept { return static_cast<int>(class_); }

 private:
  ErrorClass class_;
};

/// Invalid or inconsistent configuration. Carries every violation found.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorClass::config, what), violations_{what} {}
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A run stopped because a monitored numerical invariant failed.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, long step = -1);
  long step() const noexcept { return step_; }

 private:
  long step_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorClass::io, what) {}
};

}  // namespace vctl
