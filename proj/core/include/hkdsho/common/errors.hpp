#pragma once

#include <stdexcept>
#include <string>

namespace hkdsho {

/// Configuration rejected before any simulation runs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (shape, size, missing state).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An actuator level outside its level set.
class InvalidActionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Operation not permitted on the target (e.g. deleting a hand-authored rule).
class ForbiddenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File or stream failure; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hkdsho
