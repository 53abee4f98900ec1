#include "somor/balanced_truncation.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "somor/error.hpp"

namespace somor {

namespace {

struct StandardForm {
  Matrix A;
  Matrix B;
  Matrix C;
};

StandardForm to_standard(const DenseFirstOrderSystem& sys) {
  Eigen::PartialPivLU<Matrix> lu(sys.E);
  if (!(lu.rcond() > 1e-14))
    throw Error(ErrorCode::kFactorization, "descriptor matrix E is singular");
  return {lu.solve(sys.A), lu.solve(sys.B), sys.C};
}

// Solves A X + X A^T + Q = 0 for stable A through the complex Schur form
// A = U T U^*, back-substituting T Y + Y T^* = -U^* Q U column by column
// from the last one.
Matrix lyapunov_standard(const Matrix& A, const Matrix& Q) {
  const Index n = A.rows();
  Eigen::ComplexSchur<Matrix> schur(A);
  if (schur.info() != Eigen::Success)
    throw Error(ErrorCode::kFactorization, "Schur decomposition failed");
  const ComplexMatrix& T = schur.matrixT();
  const ComplexMatrix& U = schur.matrixU();
  for (Index i = 0; i < n; ++i)
    if (!(T(i, i).real() < 0.0))
      throw Error(ErrorCode::kStability,
                  "pencil has an eigenvalue with nonnegative real part");

  const ComplexMatrix Qt = U.adjoint() * Q.cast<Complex>() * U;
  ComplexMatrix Y = ComplexMatrix::Zero(n, n);
  ComplexVector rhs(n);
  for (Index j = n - 1; j >= 0; --j) {
    rhs = -Qt.col(j);
    const Index tail = n - 1 - j;
    if (tail > 0)
      rhs.noalias() -= Y.rightCols(tail) * T.row(j).tail(tail).adjoint();
    const Complex shift = std::conj(T(j, j));
    for (Index i = n - 1; i >= 0; --i) {
      Complex acc = rhs(i);
      const Index right = n - 1 - i;
      if (right > 0) acc -= (T.row(i).tail(right) * Y.col(j).tail(right))(0, 0);
      Y(i, j) = acc / (T(i, i) + shift);
    }
  }
  Matrix X = (U * Y * U.adjoint()).real();
  return 0.5 * (X + X.transpose());
}

// Z with Z Z^T = X for symmetric positive semidefinite X; negative
// eigenvalues from rounding are dropped.
Matrix gramian_factor(const Matrix& X) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(X);
  const Vector lambda = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lambda.asDiagonal();
}

}  // namespace

Matrix solve_lyapunov(const Matrix& A, const Matrix& E, const Matrix& R) {
  if (A.rows() > kLyapunovCap)
    throw Error(ErrorCode::kCapExceeded, "Lyapunov solve above the dense cap");
  if (A.rows() != A.cols() || E.rows() != A.rows() || E.cols() != A.cols() ||
      R.rows() != A.rows())
    throw Error(ErrorCode::kStructural, "inconsistent Lyapunov operands");
  // A X E^T + E X A^T + R R^T = 0  <=>  (E^-1 A) X + X (E^-1 A)^T + (E^-1 R)(E^-1 R)^T = 0
  Eigen::PartialPivLU<Matrix> lu(E);
  if (!(lu.rcond() > 1e-14))
    throw Error(ErrorCode::kFactorization, "descriptor matrix E is singular");
  const Matrix At = lu.solve(A);
  const Matrix Rt = lu.solve(R);
  return lyapunov_standard(At, Rt * Rt.transpose());
}

double lyapunov_residual(const Matrix& A, const Matrix& E, const Matrix& R,
                         const Matrix& X) {
  const Matrix rr = R * R.transpose();
  const Matrix res = A * X * E.transpose() + E * X * A.transpose() + rr;
  const double denom = rr.norm();
  return denom > 0.0 ? res.norm() / denom : res.norm();
}

ComplexVector system_poles(const DenseFirstOrderSystem& sys) {
  const StandardForm s = to_standard(sys);
  Eigen::EigenSolver<Matrix> es(s.A, /*computeEigenvectors=*/false);
  return es.eigenvalues();
}

bool is_stable(const DenseFirstOrderSystem& sys) {
  const ComplexVector poles = system_poles(sys);
  return (poles.real().array() < 0.0).all();
}

BalancedReduction balanced_truncate(const DenseFirstOrderSystem& sys, Index k) {
  const Index n = sys.order();
  if (k < 1 || k > n)
    throw Error(ErrorCode::kParameter, "truncation order must lie in [1, n]");
  if (n > kLyapunovCap)
    throw Error(ErrorCode::kCapExceeded, "balanced truncation above the dense cap");
  const StandardForm s = to_standard(sys);

  const Matrix P = lyapunov_standard(s.A, s.B * s.B.transpose());
  const Matrix Q = lyapunov_standard(s.A.transpose(), s.C.transpose() * s.C);
  const Matrix R = gramian_factor(P);
  const Matrix Lf = gramian_factor(Q);

  Eigen::JacobiSVD<Matrix> svd(Lf.transpose() * R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  BalancedReduction out;
  out.hankel = svd.singularValues();
  out.requested_order = k;

  Index degree = 0;
  const double floor = out.hankel.size() > 0 ? 1e-14 * out.hankel(0) : 0.0;
  while (degree < out.hankel.size() && out.hankel(degree) > floor) ++degree;
  if (k > degree) {
    out.order_clipped = true;
    k = std::max<Index>(degree, 1);
  }

  const Vector inv_sqrt = out.hankel.head(k).cwiseSqrt().cwiseInverse();
  const Matrix Tl = inv_sqrt.asDiagonal() * svd.matrixU().leftCols(k).transpose() * Lf.transpose();
  const Matrix Tr = R * svd.matrixV().leftCols(k) * inv_sqrt.asDiagonal();

  out.reduced.E = Matrix::Identity(k, k);
  out.reduced.A = Tl * s.A * Tr;
  out.reduced.B = Tl * s.B;
  out.reduced.C = s.C * Tr;
  return out;
}

BalancedReduction projected_balanced_truncation(const SecondOrderIndex3System& sys, Index k,
                                                Index cap) {
  const Projector projector = build_projector(sys, cap);
  const ProjectedSystem psys = project_system(sys, split_projector(projector), cap);
  return balanced_truncate(embed_first_order(as_second_order(psys)), k);
}

}  // namespace somor
