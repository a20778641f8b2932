#include "adoprior/error.hpp"

namespace adoprior {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDistribution: return "invalid-distribution";
    case ErrorCode::Parameter: return "parameter";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::Lookup: return "lookup";
    case ErrorCode::Ambiguity: return "ambiguity";
    case ErrorCode::UnsupportedKind: return "unsupported-kind";
    case ErrorCode::ImpossibleObservation: return "impossible-observation";
    case ErrorCode::Configuration: return "configuration";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Semantic: return "semantic";
    case ErrorCode::Io: return "io";
    case ErrorCode::Replication: return "replication";
  }
  return "unknown";
}

}  // namespace adoprior
