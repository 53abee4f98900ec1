#pragma once

#include "somor/projection.hpp"
#include "somor/system.hpp"
#include "somor/types.hpp"

namespace somor {

/// Dense descriptor system with nonsingular E and a stable pencil (A, E).
using DenseFirstOrderSystem = FirstOrderRealization;

/// Largest order accepted by the dense Lyapunov solver.
inline constexpr Index kLyapunovCap = 4000;

/// Solves A X E^T + E X A^T + R R^T = 0 for symmetric X by a complex Schur
/// (Bartels-Stewart) sweep on E^-1 A. Throws kStability if (A, E) has an
/// eigenvalue with nonnegative real part, kCapExceeded above kLyapunovCap.
Matrix solve_lyapunov(const Matrix& A, const Matrix& E, const Matrix& R);

/// ||A X E^T + E X A^T + R R^T||_F / ||R R^T||_F.
double lyapunov_residual(const Matrix& A, const Matrix& E, const Matrix& R,
                         const Matrix& X);

struct BalancedReduction {
  DenseFirstOrderSystem reduced;  // E = I
  Vector hankel;                  // all Hankel singular values, descending
  Index requested_order = 0;
  bool order_clipped = false;  // requested order exceeded the McMillan degree
};

/// Square-root balanced truncation to order k. Hankel values at or below
/// 1e-14 * sigma_1 count as zero; a k beyond the remaining count is clipped.
BalancedReduction balanced_truncate(const DenseFirstOrderSystem& sys, Index k);

/// Comparison baseline: dense projector, projected second-order system,
/// first-order embedding, balanced truncation to order k.
BalancedReduction projected_balanced_truncation(const SecondOrderIndex3System& sys, Index k,
                                                Index cap = kDefaultDenseCap);

/// Eigenvalues of E^-1 A.
ComplexVector system_poles(const DenseFirstOrderSystem& sys);
bool is_stable(const DenseFirstOrderSystem& sys);

}  // namespace somor
