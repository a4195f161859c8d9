#include "ulpar/error.hpp"

namespace ulpar {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::GridMismatch: return "grid mismatch";
    case ErrorCode::NonFinite: return "non-finite value";
    case ErrorCode::DomainTooSmall: return "domain too small";
    case ErrorCode::MissingOperator: return "missing operator";
    case ErrorCode::Ellipticity: return "ellipticity";
    case ErrorCode::Hypothesis: return "hypothesis violated";
    case ErrorCode::NearSpectrum: return "near spectrum";
    case ErrorCode::Contour: return "contour";
    case ErrorCode::Shift: return "shift";
    case ErrorCode::ScheduleExceedsModes: return "schedule exceeds modes";
    case ErrorCode::Construction: return "construction";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace ulpar
