#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "somor/saddle.hpp"
#include "somor/shifts.hpp"
#include "somor/system.hpp"

namespace somor {

struct RealBases {
  Matrix V;  // n1 x r, orthonormal columns
  Matrix W;  // n1 x r, orthonormal columns
  Index completed_columns = 0;  // numerically dependent columns replaced
};

/// Real orthonormal bases spanning the same real subspaces as the complex
/// tangential bases: one column per real shift, Re/Im columns per conjugate
/// pair. Modified Gram-Schmidt with one re-orthogonalization sweep. With
/// `constraints` set, every column is also projected back onto Null(G).
/// A column that cancels down to rounding level is replaced by a seeded
/// random direction (counted in completed_columns). Throws kBasisCollapse for
/// coinciding shifts and zero columns.
RealBases realify(const ComplexMatrix& Vc, const ComplexMatrix& Wc,
                  const ShiftSet& shifts, const SparseMatrix* constraints = nullptr);

/// Mr = W^T M V, Dr = W^T D V, Kr = W^T K V, Fr = W^T F, Lr = L V.
/// Throws kSingularReduced when Mr is numerically singular.
ReducedSecondOrderModel assemble_reduced(const SecondOrderIndex3System& sys,
                                         const Matrix& V, const Matrix& W);

enum class IrkaStatus { kConverged, kMaxIterations, kStagnated };
const char* to_string(IrkaStatus status);

struct IterationRecord {
  int iteration = 0;
  std::vector<Complex> sorted_shifts;  // shifts used for this basis build
  double shift_change = 0.0;
  double elapsed_seconds = 0.0;
};

struct ConvergenceTrace {
  std::vector<IterationRecord> iterations;
  IrkaStatus status = IrkaStatus::kMaxIterations;
  std::string note;
};

/// Passed to IrkaOptions::on_basis after every basis build.
struct BasisSnapshot {
  int iteration;
  const ShiftSet& shifts;
  const RealBases& bases;
  const ReducedSecondOrderModel& rom;
};

struct IrkaOptions {
  Index r = 30;
  int max_iter = 50;
  double tol = 1e-4;
  Band band{};
  std::uint64_t seed = 0;
  int workers = 0;
  /// Overrides the random initial shifts when set.
  std::optional<ShiftSet> initial_shifts;
  std::function<void(const BasisSnapshot&)> on_basis;
};

struct IrkaResult {
  ReducedSecondOrderModel rom;
  ConvergenceTrace trace;
  ShiftSet shifts;  // the shifts the returned rom interpolates at
  RealBases bases;
};

/// Fixed-point iteration: build bases at the current shifts by saddle solves,
/// assemble the reduced model, update the shifts from its balanced truncation,
/// stop when the shift change drops below tol. The returned model is the one
/// assembled at the last basis build. Shift failures perturb the offending
/// shift by a factor 1 + 1e-2, at most 3 times, before rethrowing.
IrkaResult irka_reduce(const SecondOrderIndex3System& sys,
                       const IrkaOptions& options);

/// Interpolation residuals at shift i; NaN marks an entry that could not be
/// evaluated (shift at a pole).
struct InterpolationResidual {
  Complex alpha;
  double zeroth = 0.0;      // ||T b - Tr b|| / ||T b||
  double bitangential = 0.0;  // |c^T T b - c^T Tr b| / |c^T T b|
  double derivative = 0.0;  // same for T', central differences
};

std::vector<InterpolationResidual> check_interpolation(
    const SecondOrderIndex3System& sys, const ReducedSecondOrderModel& rom,
    const ShiftSet& shifts);

}  // namespace somor
