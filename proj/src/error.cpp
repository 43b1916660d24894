#include "fy/error.hpp"

namespace fy {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::TooLarge: return "too-large";
    case ErrorKind::SingularMatrix: return "singular-matrix";
    case ErrorKind::ShiftSingular: return "shift-singular";
    case ErrorKind::SolverFailure: return "solver-failure";
    case ErrorKind::SpuriousEnergy: return "spurious-energy";
    case ErrorKind::ChannelEnergy: return "channel-energy";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace fy
