#include "somor/system.hpp"

#include <sstream>

#include <Eigen/Dense>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#include <Eigen/SparseQR>

#include "somor/error.hpp"

namespace somor {

namespace {

void check_shape(std::vector<std::string>& issues, const char* name,
                 const SparseMatrix& a, Index rows, Index cols) {
  if (a.rows() != rows || a.cols() != cols) {
    std::ostringstream msg;
    msg << name << " is " << a.rows() << "x" << a.cols() << ", expected "
        << rows << "x" << cols;
    issues.push_back(msg.str());
  }
}

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << "dimensions " << (dimensions_ok ? "ok" : "FAILED");
  for (const auto& issue : dimension_issues) out << "; " << issue;
  out << ", rank(G) = " << g_rank << (g_full_rank ? " (full)" : " (deficient)")
      << ", M " << (m_factorizable ? "factorizable" : "NOT factorizable");
  return out.str();
}

Index constraint_rank(const SparseMatrix& G) {
  if (G.rows() == 0 || G.nonZeros() == 0) return 0;
  double max_abs = 0.0;
  for (int k = 0; k < G.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(G, k); it; ++it)
      max_abs = std::max(max_abs, std::abs(it.value()));
  SparseMatrix gt = G.transpose();
  gt.makeCompressed();
  Eigen::SparseQR<SparseMatrix, Eigen::COLAMDOrdering<int>> qr;
  qr.setPivotThreshold(1e-10 * max_abs);
  qr.compute(gt);
  if (qr.info() != Eigen::Success) return 0;
  return qr.rank();
}

ValidationReport validate_system(const SecondOrderIndex3System& sys) {
  ValidationReport report;
  const Index n1 = sys.n1();
  const Index n2 = sys.n2();
  check_shape(report.dimension_issues, "M", sys.M, n1, n1);
  check_shape(report.dimension_issues, "D", sys.D, n1, n1);
  check_shape(report.dimension_issues, "K", sys.K, n1, n1);
  check_shape(report.dimension_issues, "G", sys.G, n2, n1);
  check_shape(report.dimension_issues, "F", sys.F, n1, sys.inputs());
  check_shape(report.dimension_issues, "L", sys.L, sys.outputs(), n1);
  if (n1 == 0) report.dimension_issues.push_back("n1 must be positive");
  if (n2 >= n1) report.dimension_issues.push_back("n2 must be smaller than n1");
  if (sys.inputs() == 0) report.dimension_issues.push_back("F has no columns");
  if (sys.outputs() == 0) report.dimension_issues.push_back("L has no rows");
  report.dimensions_ok = report.dimension_issues.empty();
  if (!report.dimensions_ok) return report;

  report.g_rank = constraint_rank(sys.G);
  report.g_full_rank = report.g_rank == n2;

  SparseMatrix m = sys.M;
  m.makeCompressed();
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(m);
  report.m_factorizable = lu.info() == Eigen::Success;
  return report;
}

void require_valid(const SecondOrderIndex3System& sys) {
  const ValidationReport report = validate_system(sys);
  if (!report.dimensions_ok)
    throw Error(ErrorCode::kStructural, "invalid system: " + report.summary());
  if (!report.g_full_rank)
    throw Error(ErrorCode::kConstraintDegeneracy,
                "constraint matrix G is rank deficient: " + report.summary());
  if (!report.m_factorizable)
    throw Error(ErrorCode::kFactorization,
                "mass matrix M is singular: " + report.summary());
}

bool ReducedSecondOrderModel::all_finite() const {
  return Mr.allFinite() && Dr.allFinite() && Kr.allFinite() &&
         Fr.allFinite() && Lr.allFinite();
}

FirstOrderRealization embed_first_order(const ReducedSecondOrderModel& rom) {
  const Index r = rom.order();
  if (r < 1) throw Error(ErrorCode::kEmbedding, "reduced model has order 0");
  Eigen::FullPivLU<Matrix> lu(rom.Mr);
  if (!lu.isInvertible())
    throw Error(ErrorCode::kEmbedding, "reduced mass matrix is singular");

  FirstOrderRealization fo;
  fo.E = Matrix::Identity(2 * r, 2 * r);
  fo.E.bottomRightCorner(r, r) = rom.Mr;
  fo.A = Matrix::Zero(2 * r, 2 * r);
  fo.A.topRightCorner(r, r).setIdentity();
  fo.A.bottomLeftCorner(r, r) = -rom.Kr;
  fo.A.bottomRightCorner(r, r) = -rom.Dr;
  fo.B = Matrix::Zero(2 * r, rom.inputs());
  fo.B.bottomRows(r) = rom.Fr;
  fo.C = Matrix::Zero(rom.outputs(), 2 * r);
  fo.C.leftCols(r) = rom.Lr;
  return fo;
}

ComplexVector pencil_eigenvalues(const FirstOrderRealization& sys) {
  Eigen::PartialPivLU<Matrix> lu(sys.E);
  const Matrix n = lu.solve(sys.A);
  Eigen::EigenSolver<Matrix> es(n, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::kFactorization, "eigenvalue iteration failed");
  return es.eigenvalues();
}

SparseMatrix to_sparse(const Matrix& a) {
  std::vector<Triplet> entries;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0.0)
        entries.emplace_back(static_cast<int>(i), static_cast<int>(j), a(i, j));
  SparseMatrix s(a.rows(), a.cols());
  s.setFromTriplets(entries.begin(), entries.end());
  return s;
}

}  // namespace somor
