#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace msf {

// Physical parameter outside its domain, or a model evaluated where it is undefined.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration text that cannot be turned into a valid run. Carries the key and
// 1-based line number when known (line 0 = not tied to a specific line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

// Solver precondition failure (e.g. the root is not bracketed). Plain
// non-convergence is reported through DesignSolution::converged, not thrown.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace msf
