#pragma once

#include <stdexcept>
#include <string>

namespace fy {

enum class ErrorKind {
  InvalidInput,
  TooLarge,
  SingularMatrix,
  ShiftSingular,
  SolverFailure,
  SpuriousEnergy,
  ChannelEnergy,
  PreconditionViolation,
  InternalConsistency,
  Config,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the toolkit. The kind tag is
/// what the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// H0+V_alpha-z could not be inverted; carries the 0-based channel index.
class ChannelEnergyError : public Error {
 public:
  ChannelEnergyError(int channel, const std::string& what)
      : Error(ErrorKind::ChannelEnergy, what), channel_(channel) {}

  int channel() const noexcept { return channel_; }

 private:
  int channel_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidInput, what);
}

}  // namespace fy
