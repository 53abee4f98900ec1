#include "somor/error.hpp"

namespace somor {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kStructural: return "structural";
    case ErrorCode::kConstraintDegeneracy: return "constraint-degeneracy";
    case ErrorCode::kFactorization: return "factorization";
    case ErrorCode::kShiftAtEigenvalue: return "shift-at-eigenvalue";
    case ErrorCode::kEmbedding: return "embedding";
    case ErrorCode::kStability: return "stability";
    case ErrorCode::kRank: return "rank";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kBasisCollapse: return "basis-collapse";
    case ErrorCode::kSingularReduced: return "singular-reduced";
    case ErrorCode::kPole: return "pole";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace somor
