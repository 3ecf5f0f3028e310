#pragma once

#include <stdexcept>
#include <string>

namespace oamwalk {

// Every failure the library reports derives from Error. The CLI maps the
// concrete type onto its exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Malformed or inconsistent configuration text.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

// Physically meaningless request: wavelength outside the model range,
// evanescent geometry, no phase-matching solution, empty emission support.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

// Dispersion model evaluated where it is undefined (pole, negative radicand).
class ModelError : public DomainError {
 public:
  using DomainError::DomainError;
  const char* kind() const noexcept override { return "model"; }
};

// Iterative method failed to reach its tolerance, or a fit had too few
// usable points.
class ConvergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "convergence"; }
};

}  // namespace oamwalk
