#pragma once

#include <stdexcept>
#include <string>

namespace hybridlog {

/// Invalid or unreadable configuration. `field()` names the offending key
/// when one is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by a feedback channel that can no longer answer queries.
class ChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hybridlog
