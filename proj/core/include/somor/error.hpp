#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace somor {

enum class ErrorCode {
  kStructural,
  kConstraintDegeneracy,
  kFactorization,
  kShiftAtEigenvalue,
  kEmbedding,
  kStability,
  kRank,
  kCapExceeded,
  kBasisCollapse,
  kSingularReduced,
  kPole,
  kParameter,
  kIo,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A shift that lands on (or numerically near) a pole of the constrained
/// pencil. Carries the reciprocal condition estimate of the augmented matrix
/// and, when raised from a batch solve, the index of the offending shift.
class ShiftError : public Error {
 public:
  static constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

  ShiftError(const std::string& what, double rcond,
             std::size_t shift_index = kNoIndex)
      : Error(ErrorCode::kShiftAtEigenvalue, what),
        rcond_(rcond),
        shift_index_(shift_index) {}

  double rcond() const noexcept { return rcond_; }
  std::size_t shift_index() const noexcept { return shift_index_; }

 private:
  double rcond_;
  std::size_t shift_index_;
};

}  // namespace somor
