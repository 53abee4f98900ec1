#pragma once

#include <memory>

#include "somor/system.hpp"
#include "somor/types.hpp"

namespace somor {

class ShiftSet;

enum class SaddleSide { kRight, kLeft };

/// Augmented (saddle-point) matrix of order n1 + n2 at a complex shift:
///
///   right: [a^2 M + a D + K,        G^T]     left: [a^2 M^T + a D^T + K^T, G^T]
///          [G,                       0 ]           [G,                      0 ]
///
/// Solving with right-hand side [F b; 0] yields a vector in Null(G) without
/// ever forming the hidden-manifold projector. The multiplier block of the
/// solution stays inside this class.
///
/// Holds a reference to `sys`; the system must outlive the operator.
class SaddleOperator {
 public:
  /// Reciprocal condition estimates below this raise ShiftError.
  static constexpr double kMinRcond = 1e-14;

  SaddleOperator(const SecondOrderIndex3System& sys, Complex shift,
                 SaddleSide side);
  ~SaddleOperator();
  SaddleOperator(SaddleOperator&&) noexcept;
  SaddleOperator& operator=(SaddleOperator&&) noexcept;

  Complex shift() const { return shift_; }
  SaddleSide side() const { return side_; }
  Index order() const { return matrix_.rows(); }
  const ComplexSparseMatrix& matrix() const { return matrix_; }

  /// Sparse LU with partial pivoting. Throws ShiftError when the factorization
  /// fails or the 1-norm reciprocal condition estimate is below kMinRcond.
  void factorize();
  bool factorized() const { return lu_ != nullptr; }
  double rcond_estimate() const { return rcond_; }

  /// Solves with right-hand side [rhs_top; 0] (rhs_top has n1 rows, any number
  /// of columns) and returns only the first n1 rows of the solution.
  /// Factorizes on first use.
  ComplexMatrix solve(const ComplexMatrix& rhs_top);

  /// Relative residual ||S [x; lambda] - [rhs; 0]|| / ||[rhs; 0]|| of the full
  /// augmented solve, multiplier included (Frobenius norms over all columns).
  double relative_residual(const ComplexMatrix& rhs_top);

 private:
  struct Factorization;

  ComplexMatrix solve_full(const ComplexMatrix& rhs_top);

  const SecondOrderIndex3System* sys_;
  Complex shift_;
  SaddleSide side_;
  ComplexSparseMatrix matrix_;
  std::unique_ptr<Factorization> lu_;
  double rcond_ = 0.0;
};

/// Assembled augmented matrix only (no factorization).
ComplexSparseMatrix assemble_saddle(const SecondOrderIndex3System& sys,
                                    Complex shift, SaddleSide side);

/// First block of [Q G^T; G 0] [v; .] = [F b; 0] with Q = a^2 M + a D + K.
ComplexVector solve_right(const SecondOrderIndex3System& sys, Complex shift,
                          const ComplexVector& b);

/// First block of [Q^T G^T; G 0] [w; .] = [L^T c; 0].
ComplexVector solve_left(const SecondOrderIndex3System& sys, Complex shift,
                         const ComplexVector& c);

struct TangentialBases {
  ComplexMatrix V;  // n1 x r, column i solves the right system at shift i
  ComplexMatrix W;  // n1 x r, column i solves the left system at shift i
};

/// One factorization per distinct shift and side. Members of a conjugate pair
/// with conjugate directions reuse the partner's solution by conjugation.
/// Shift failures are rethrown as ShiftError carrying the shift index.
/// `workers` <= 0 picks the default worker count.
TangentialBases solve_many(const SecondOrderIndex3System& sys,
                           const ShiftSet& shifts, int workers = 0);

}  // namespace somor
