#pragma once

#include <stdexcept>
#include <string>

namespace gyre {

// Base class for every failure the solver reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Water depth at or below the positivity floor.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// Courant number above one in a hyperbolic or tracer step.
class CflError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or runaway growth.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gyre
