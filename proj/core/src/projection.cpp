#include "somor/projection.hpp"

#include <Eigen/Dense>
#include <Eigen/OrderingMethods>
#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include "somor/error.hpp"

namespace somor {

namespace {

void check_cap(Index n1, Index cap) {
  if (n1 > cap)
    throw Error(ErrorCode::kCapExceeded,
                "n1 = " + std::to_string(n1) + " exceeds the dense oracle cap of " +
                    std::to_string(cap));
}

}  // namespace

Projector build_projector(const SecondOrderIndex3System& sys, Index cap) {
  check_cap(sys.n1(), cap);
  const Index n1 = sys.n1();

  SparseMatrix m = sys.M;
  m.makeCompressed();
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::kFactorization, "mass matrix is singular");

  const Matrix gt = to_dense(SparseMatrix(sys.G.transpose()));
  const Matrix minv_gt = lu.solve(gt);                    // M^-1 G^T
  const Matrix g_minv = Matrix(lu.transpose().solve(gt)).transpose();  // G M^-1
  const Matrix schur = sys.G * minv_gt;                   // G M^-1 G^T

  Eigen::PartialPivLU<Matrix> slu(schur);
  if (schur.size() > 0 && !(slu.rcond() > 1e-14))
    throw Error(ErrorCode::kConstraintDegeneracy, "G M^-1 G^T is singular");

  Projector out;
  out.P = Matrix::Identity(n1, n1);
  if (schur.size() > 0) out.P.noalias() -= gt * slu.solve(g_minv);
  out.rank = n1 - sys.n2();
  return out;
}

ProjectorSplit split_projector(const Projector& projector) {
  Eigen::BDCSVD<Matrix> svd(projector.P, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? 1e-10 * s(0) : 0.0;
  Index k = 0;
  while (k < s.size() && s(k) > cutoff) ++k;
  if (k != projector.rank)
    throw Error(ErrorCode::kRank, "projector has numerical rank " + std::to_string(k) +
                                      ", expected " + std::to_string(projector.rank));
  ProjectorSplit split;
  split.Psi_l = svd.matrixU().leftCols(k) * s.head(k).asDiagonal();
  split.Psi_r = svd.matrixV().leftCols(k);
  return split;
}

ProjectedSystem project_system(const SecondOrderIndex3System& sys,
                               const ProjectorSplit& split, Index cap) {
  check_cap(sys.n1(), cap);
  const Matrix& psi = split.Psi_r;
  ProjectedSystem p;
  p.Mt = psi.transpose() * (sys.M * psi);
  p.Dt = psi.transpose() * (sys.D * psi);
  p.Kt = psi.transpose() * (sys.K * psi);
  p.Ft = psi.transpose() * sys.F;
  p.Lt = sys.L * psi;
  return p;
}

ReducedSecondOrderModel as_second_order(const ProjectedSystem& psys) {
  return {psys.Mt, psys.Dt, psys.Kt, psys.Ft, psys.Lt};
}

ComplexMatrix projected_transfer(const ProjectedSystem& psys, Complex s) {
  const ComplexMatrix resolvent = (s * s) * psys.Mt.cast<Complex>() +
                                  s * psys.Dt.cast<Complex>() + psys.Kt.cast<Complex>();
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent);
  if (!(lu.rcond() > 1e-14))
    throw Error(ErrorCode::kPole, "projected resolvent is singular");
  return psys.Lt.cast<Complex>() * lu.solve(psys.Ft.cast<Complex>());
}

ProjectorResiduals projector_residuals(const SecondOrderIndex3System& sys,
                                       const Projector& projector) {
  const Matrix& P = projector.P;
  const Matrix M = to_dense(sys.M);
  const Matrix Gt = to_dense(SparseMatrix(sys.G.transpose()));
  const double np = P.norm();
  ProjectorResiduals r;
  r.idempotency = (P * P - P).norm() / np;
  r.mass_symmetry = (P * M - M * P.transpose()).norm() / (np * M.norm());
  r.null_space = Gt.size() > 0 ? (P * Gt).norm() / (np * Gt.norm()) : 0.0;
  return r;
}

SplitResiduals split_residuals(const Projector& projector,
                               const ProjectorSplit& split) {
  SplitResiduals r;
  r.factorization =
      (split.Psi_l * split.Psi_r.transpose() - projector.P).norm() / projector.P.norm();
  const Index k = split.Psi_l.cols();
  r.biorthogonality =
      (split.Psi_l.transpose() * split.Psi_r - Matrix::Identity(k, k)).norm();
  return r;
}

Matrix null_space_basis(const SparseMatrix& G) {
  const Index n1 = G.cols();
  if (G.rows() == 0) return Matrix::Identity(n1, n1);
  Eigen::BDCSVD<Matrix> svd(to_dense(G), Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  Index rank = 0;
  while (rank < s.size() && s(rank) > 1e-10 * s(0)) ++rank;
  return svd.matrixV().rightCols(n1 - rank);
}

}  // namespace somor
