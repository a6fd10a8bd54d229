#pragma once

#include <stdexcept>
#include <string>

namespace tailsim {

/// Input violates a documented precondition (non-unit quaternion, bad altitude, ...).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A geometric quantity is undefined at the requested point (atan2(0,0), zero field, ...).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested thrust/moment cannot be produced by real propeller speeds.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EndOfTrajectory : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace tailsim
