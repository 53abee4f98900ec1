#pragma once

#include <string>
#include <vector>

#include "somor/types.hpp"

namespace somor {

/// Linearized constrained mechanical model
///
///   M x'' + D x' + K x + G^T z = F u,   G x = 0,   y = L x
///
/// with M, D, K of order n1, G of size n2 x n1 (n2 < n1, full row rank),
/// F of size n1 x m and L of size q x n1. The multiplier z is never stored.
struct SecondOrderIndex3System {
  SparseMatrix M;
  SparseMatrix D;
  SparseMatrix K;
  SparseMatrix G;
  SparseMatrix F;
  SparseMatrix L;

  Index n1() const { return M.rows(); }
  Index n2() const { return G.rows(); }
  Index inputs() const { return F.cols(); }
  Index outputs() const { return L.rows(); }
};

struct ValidationReport {
  bool dimensions_ok = false;
  std::vector<std::string> dimension_issues;
  Index g_rank = 0;
  bool g_full_rank = false;
  bool m_factorizable = false;

  bool accepted() const { return dimensions_ok && g_full_rank && m_factorizable; }
  std::string summary() const;
};

/// Checks dimensions, the numerical rank of G and factorizability of M.
/// Never throws for an invalid system; the report says what failed.
ValidationReport validate_system(const SecondOrderIndex3System& sys);

/// Throws Error with kStructural, kConstraintDegeneracy or kFactorization
/// (first failing check, in that order) unless the system is accepted.
void require_valid(const SecondOrderIndex3System& sys);

/// Numerical row rank of G from a column-pivoted sparse QR of G^T, with
/// drop tolerance 1e-10 * max|G_ij|.
Index constraint_rank(const SparseMatrix& G);

/// Dense second-order model (Mr, Dr, Kr, Fr, Lr) of order r.
struct ReducedSecondOrderModel {
  Matrix Mr;
  Matrix Dr;
  Matrix Kr;
  Matrix Fr;
  Matrix Lr;

  Index order() const { return Mr.rows(); }
  Index inputs() const { return Fr.cols(); }
  Index outputs() const { return Lr.rows(); }
  bool all_finite() const;
};

/// Descriptor realization E x' = A x + B u, y = C x.
struct FirstOrderRealization {
  Matrix E;
  Matrix A;
  Matrix B;
  Matrix C;

  Index order() const { return A.rows(); }
};

/// E = [I 0; 0 Mr], A = [0 I; -Kr -Dr], B = [0; Fr], C = [Lr 0].
/// Throws kEmbedding if Mr is singular.
FirstOrderRealization embed_first_order(const ReducedSecondOrderModel& rom);

/// Finite eigenvalues of the pencil (A, E); E must be nonsingular.
ComplexVector pencil_eigenvalues(const FirstOrderRealization& sys);

/// Dense copy of a sparse matrix.
inline Matrix to_dense(const SparseMatrix& a) { return Matrix(a); }

/// Sparse copy of a dense matrix, dropping exact zeros.
SparseMatrix to_sparse(const Matrix& a);

}  // namespace somor
