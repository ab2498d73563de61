#pragma once

#include <stdexcept>
#include <string>

namespace limitfrac {

/// Invalid mesh input, misaligned slit, degenerate element or bad element index.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field used with a mesh it is not bound to, or an invalid transfer.
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration value. `line` is 0 when the error is not tied to a file line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Linear or nonlinear iteration that did not reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace limitfrac
