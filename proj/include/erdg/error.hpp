#pragma once

#include <stdexcept>
#include <string>

namespace erdg {

/// Base of every error the solver raises. `code()` is a short stable token
/// used by the CLI for its machine-readable abort line.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

class MeshError : public Error {
public:
  explicit MeshError(const std::string& what) : Error("mesh", what) {}
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

/// Raised when startup (cubature, filter construction) cannot be completed.
class StartupError : public Error {
public:
  explicit StartupError(const std::string& what) : Error("startup", what) {}
};

/// A non-physical state (rho <= 0 or p <= 0) was encountered.
class PositivityError : public Error {
public:
  explicit PositivityError(const std::string& what) : Error("positivity", what) {}
};

class TimeStepError : public Error {
public:
  explicit TimeStepError(const std::string& what) : Error("timestep", what) {}
};

}  // namespace erdg
