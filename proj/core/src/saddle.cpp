#include "somor/saddle.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

#include "somor/error.hpp"
#include "somor/parallel.hpp"
#include "somor/shifts.hpp"

namespace somor {

struct SaddleOperator::Factorization {
  Eigen::SparseLU<ComplexSparseMatrix, Eigen::COLAMDOrdering<int>> lu;
};

namespace {

using ComplexTriplet = Eigen::Triplet<Complex, int>;

void append(std::vector<ComplexTriplet>& out, const SparseMatrix& a,
            Complex scale, bool transpose, int row_offset, int col_offset) {
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      const int i = static_cast<int>(transpose ? it.col() : it.row());
      const int j = static_cast<int>(transpose ? it.row() : it.col());
      out.emplace_back(i + row_offset, j + col_offset, scale * it.value());
    }
}

double one_norm(const ComplexSparseMatrix& a) {
  double best = 0.0;
  for (int k = 0; k < a.outerSize(); ++k) {
    double sum = 0.0;
    for (ComplexSparseMatrix::InnerIterator it(a, k); it; ++it) sum += std::abs(it.value());
    best = std::max(best, sum);
  }
  return best;
}

// Hager/Higham estimate of ||A^-1||_1 from solves with A and A^H.
template <typename Lu>
double inverse_one_norm_estimate(Lu& lu, Index n) {
  ComplexVector x = ComplexVector::Constant(n, Complex(1.0 / static_cast<double>(n)));
  double estimate = 0.0;
  Index last_j = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const ComplexVector y = lu.solve(x);
    const double norm_y = y.cwiseAbs().sum();
    if (iter > 0 && norm_y <= estimate) break;
    estimate = norm_y;
    ComplexVector xi(n);
    for (Index i = 0; i < n; ++i) {
      const double a = std::abs(y(i));
      xi(i) = a > 0.0 ? y(i) / a : Complex(1.0);
    }
    const ComplexVector z = lu.adjoint().solve(xi);
    Index j = 0;
    z.cwiseAbs().maxCoeff(&j);
    if (iter > 0 && (j == last_j || std::abs(z(j)) <= std::real(z.dot(x)))) break;
    last_j = j;
    x.setZero();
    x(j) = 1.0;
  }
  // Alternating test vector guards against the estimator's known blind spots.
  ComplexVector alt(n);
  for (Index i = 0; i < n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    alt(i) = sign * (1.0 + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0));
  }
  const double alt_est =
      2.0 * lu.solve(alt).cwiseAbs().sum() / (3.0 * static_cast<double>(n));
  return std::max(estimate, alt_est);
}

std::string shift_text(Complex a) {
  std::ostringstream out;
  out << a.real() << (a.imag() < 0 ? " - " : " + ") << std::abs(a.imag()) << "i";
  return out.str();
}

}  // namespace

ComplexSparseMatrix assemble_saddle(const SecondOrderIndex3System& sys,
                                    Complex shift, SaddleSide side) {
  const Index n1 = sys.n1();
  const Index n2 = sys.n2();
  const bool transpose = side == SaddleSide::kLeft;
  std::vector<ComplexTriplet> entries;
  entries.reserve(static_cast<std::size_t>(sys.M.nonZeros() + sys.D.nonZeros() +
                                           sys.K.nonZeros() + 2 * sys.G.nonZeros()));
  append(entries, sys.M, shift * shift, transpose, 0, 0);
  append(entries, sys.D, shift, transpose, 0, 0);
  append(entries, sys.K, Complex(1.0), transpose, 0, 0);
  const int off = static_cast<int>(n1);
  append(entries, sys.G, Complex(1.0), /*transpose=*/true, 0, off);  // G^T
  append(entries, sys.G, Complex(1.0), /*transpose=*/false, off, 0);  // G
  ComplexSparseMatrix s(n1 + n2, n1 + n2);
  s.setFromTriplets(entries.begin(), entries.end());
  s.makeCompressed();
  return s;
}

SaddleOperator::SaddleOperator(const SecondOrderIndex3System& sys, Complex shift,
                               SaddleSide side)
    : sys_(&sys), shift_(shift), side_(side), matrix_(assemble_saddle(sys, shift, side)) {}

SaddleOperator::~SaddleOperator() = default;
SaddleOperator::SaddleOperator(SaddleOperator&&) noexcept = default;
SaddleOperator& SaddleOperator::operator=(SaddleOperator&&) noexcept = default;

void SaddleOperator::factorize() {
  auto f = std::make_unique<Factorization>();
  f->lu.analyzePattern(matrix_);
  f->lu.factorize(matrix_);
  if (f->lu.info() != Eigen::Success) {
    throw ShiftError("augmented matrix is singular at shift " + shift_text(shift_) +
                         " (" + f->lu.lastErrorMessage() + ")",
                     0.0);
  }
  const double inv_norm = inverse_one_norm_estimate(f->lu, order());
  const double rcond = 1.0 / (one_norm(matrix_) * inv_norm);
  if (!std::isfinite(rcond) || rcond < kMinRcond) {
    std::ostringstream msg;
    msg << "shift " << shift_text(shift_)
        << " is numerically at an eigenvalue (rcond estimate " << rcond << ")";
    throw ShiftError(msg.str(), std::isfinite(rcond) ? rcond : 0.0);
  }
  rcond_ = rcond;
  lu_ = std::move(f);
}

ComplexMatrix SaddleOperator::solve_full(const ComplexMatrix& rhs_top) {
  if (rhs_top.rows() != sys_->n1())
    throw Error(ErrorCode::kStructural, "right-hand side must have n1 rows");
  if (!lu_) factorize();
  ComplexMatrix rhs = ComplexMatrix::Zero(order(), rhs_top.cols());
  rhs.topRows(sys_->n1()) = rhs_top;
  return lu_->lu.solve(rhs);
}

ComplexMatrix SaddleOperator::solve(const ComplexMatrix& rhs_top) {
  return solve_full(rhs_top).topRows(sys_->n1());
}

double SaddleOperator::relative_residual(const ComplexMatrix& rhs_top) {
  const ComplexMatrix x = solve_full(rhs_top);
  ComplexMatrix rhs = ComplexMatrix::Zero(order(), rhs_top.cols());
  rhs.topRows(sys_->n1()) = rhs_top;
  const double denom = rhs.norm();
  const double res = (matrix_ * x - rhs).norm();
  return denom > 0.0 ? res / denom : res;
}

ComplexVector solve_right(const SecondOrderIndex3System& sys, Complex shift,
                          const ComplexVector& b) {
  SaddleOperator op(sys, shift, SaddleSide::kRight);
  const ComplexVector rhs = sys.F.cast<Complex>() * b;
  return op.solve(rhs);
}

ComplexVector solve_left(const SecondOrderIndex3System& sys, Complex shift,
                         const ComplexVector& c) {
  SaddleOperator op(sys, shift, SaddleSide::kLeft);
  const ComplexVector rhs = SparseMatrix(sys.L.transpose()).cast<Complex>() * c;
  return op.solve(rhs);
}

TangentialBases solve_many(const SecondOrderIndex3System& sys,
                           const ShiftSet& shifts, int workers) {
  const std::size_t r = shifts.size();
  TangentialBases out;
  out.V.resize(sys.n1(), static_cast<Index>(r));
  out.W.resize(sys.n1(), static_cast<Index>(r));

  std::vector<std::size_t> leaders;
  for (std::size_t i = 0; i < r; ++i)
    if (shifts.is_leader(i)) leaders.push_back(i);

  const ComplexSparseMatrix F = sys.F.cast<Complex>();
  const ComplexSparseMatrix Lt = SparseMatrix(sys.L.transpose()).cast<Complex>();

  parallel_for(leaders.size(), workers, [&](std::size_t k) {
    const std::size_t i = leaders[k];
    try {
      SaddleOperator right(sys, shifts.alpha(i), SaddleSide::kRight);
      const ComplexVector v = right.solve(F * shifts.b(i));
      SaddleOperator left(sys, shifts.alpha(i), SaddleSide::kLeft);
      const ComplexVector w = left.solve(Lt * shifts.c(i));
      const auto col = static_cast<Index>(i);
      out.V.col(col) = v;
      out.W.col(col) = w;
      const std::size_t j = shifts.partner(i);
      if (j != i) {
        out.V.col(static_cast<Index>(j)) = v.conjugate();
        out.W.col(static_cast<Index>(j)) = w.conjugate();
      }
    } catch (const ShiftError& e) {
      throw ShiftError(std::string(e.what()) + " [shift index " + std::to_string(i) + "]",
                       e.rcond(), i);
    }
  });
  return out;
}

}  // namespace somor
