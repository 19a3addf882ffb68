#include "lladic/errors.hpp"

namespace lladic {

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NoSimpleRoot: return "NoSimpleRoot";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::NoConjugation: return "NoConjugation";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::ValuesNotIntegral: return "ValuesNotIntegral";
    case ErrorKind::SymmetryMismatch: return "SymmetryMismatch";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::HypothesesUnmet: return "HypothesesUnmet";
    case ErrorKind::RigidityViolation: return "RigidityViolation";
    case ErrorKind::DegenerateBlock: return "DegenerateBlock";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::OracleRefuted: return "OracleRefuted";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace lladic
