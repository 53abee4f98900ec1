#include "somor/irka.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "somor/error.hpp"
#include "somor/frequency_response.hpp"

namespace somor {

namespace {

// A column whose part outside the span of its predecessors is below this
// fraction of its norm adds nothing measurable to the interpolation data.
constexpr double kDependentRatio = 1e-10;

// Orthogonal projection onto Null(G). Cancellation in Gram-Schmidt amplifies
// the rounding-level constraint residual of nearly dependent columns; this
// removes it again.
class NullSpaceCleaner {
 public:
  explicit NullSpaceCleaner(const SparseMatrix* G) : G_(G) {
    if (!G_ || G_->rows() == 0) return;
    const SparseMatrix ggt = (*G_) * G_->transpose();
    ldlt_.compute(ggt);
    if (ldlt_.info() != Eigen::Success)
      throw Error(ErrorCode::kConstraintDegeneracy, "G G^T is not factorizable");
    active_ = true;
  }
  void apply(Eigen::Ref<Vector> x) const {
    if (!active_) return;
    const Vector y = ldlt_.solve((*G_) * x);
    x -= G_->transpose() * y;
  }

 private:
  const SparseMatrix* G_;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
  bool active_ = false;
};

void orthogonalize_column(Matrix& Q, Index j, const NullSpaceCleaner& clean) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Index k = 0; k < j; ++k) Q.col(j) -= Q.col(k).dot(Q.col(j)) * Q.col(k);
    clean.apply(Q.col(j));
  }
}

// Modified Gram-Schmidt, left to right, two passes per column. A column that
// already lies in the span of its predecessors to working precision carries
// no new interpolation data; it is replaced by a seeded random direction in
// Null(G) so the basis keeps its width.
Matrix orthonormalize(const Matrix& raw, const NullSpaceCleaner& clean, const char* which,
                      Index& completed) {
  Matrix Q = raw;
  for (Index j = 0; j < Q.cols(); ++j) {
    const double original = Q.col(j).norm();
    if (!(original > 0.0) || !std::isfinite(original))
      throw Error(ErrorCode::kBasisCollapse,
                  std::string(which) + " basis column " + std::to_string(j) + " is zero");
    orthogonalize_column(Q, j, clean);
    double remaining = Q.col(j).norm();
    if (!(remaining > kDependentRatio * original)) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(j));
      std::normal_distribution<double> normal;
      for (Index i = 0; i < Q.rows(); ++i) Q(i, j) = normal(rng);
      const double fresh = Q.col(j).norm();
      orthogonalize_column(Q, j, clean);
      remaining = Q.col(j).norm();
      if (!(remaining > 1e-8 * fresh))
        throw Error(ErrorCode::kBasisCollapse, std::string(which) +
                                                   " basis cannot be completed at column " +
                                                   std::to_string(j));
      ++completed;
    }
    Q.col(j) /= remaining;
  }
  return Q;
}

// Two shifts that coincide with parallel directions give the same column.
void check_distinct(const ShiftSet& shifts) {
  const auto parallel = [](const ComplexVector& x, const ComplexVector& y) {
    const double nx = x.norm(), ny = y.norm();
    return nx == 0.0 || ny == 0.0 || std::abs(x.dot(y)) >= (1.0 - 1e-12) * nx * ny;
  };
  for (std::size_t i = 0; i < shifts.size(); ++i)
    for (std::size_t j = i + 1; j < shifts.size(); ++j) {
      const Complex a = shifts.alpha(i), b = shifts.alpha(j);
      if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) continue;
      if (parallel(shifts.b(i), shifts.b(j)) && parallel(shifts.c(i), shifts.c(j)))
        throw Error(ErrorCode::kBasisCollapse, "duplicate shifts " + std::to_string(i) +
                                                   " and " + std::to_string(j));
    }
}

Matrix split_real(const ComplexMatrix& Xc, const ShiftSet& shifts) {
  Matrix X(Xc.rows(), Xc.cols());
  Index col = 0;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    if (!shifts.is_leader(i)) continue;
    const auto c = static_cast<Index>(i);
    X.col(col++) = Xc.col(c).real();
    if (shifts.partner(i) != i) X.col(col++) = Xc.col(c).imag();
  }
  return X;
}

RealBases build_bases(const SecondOrderIndex3System& sys, ShiftSet& shifts,
                      int workers) {
  constexpr int kRetries = 3;
  for (int attempt = 0;; ++attempt) {
    try {
      const TangentialBases tb = solve_many(sys, shifts, workers);
      return realify(tb.V, tb.W, shifts, &sys.G);
    } catch (const ShiftError& e) {
      if (attempt == kRetries || e.shift_index() == ShiftError::kNoIndex) throw;
      shifts.scale_shift(e.shift_index(), 1.0 + 1e-2);
    }
  }
}

}  // namespace

const char* to_string(IrkaStatus status) {
  switch (status) {
    case IrkaStatus::kConverged: return "converged";
    case IrkaStatus::kMaxIterations: return "max-iterations";
    case IrkaStatus::kStagnated: return "stagnated";
  }
  return "unknown";
}

RealBases realify(const ComplexMatrix& Vc, const ComplexMatrix& Wc,
                  const ShiftSet& shifts, const SparseMatrix* constraints) {
  if (Vc.cols() != static_cast<Index>(shifts.size()) || Wc.cols() != Vc.cols())
    throw Error(ErrorCode::kStructural, "basis width differs from the shift count");
  check_distinct(shifts);
  const NullSpaceCleaner clean(constraints);
  RealBases out;
  out.V = orthonormalize(split_real(Vc, shifts), clean, "right", out.completed_columns);
  out.W = orthonormalize(split_real(Wc, shifts), clean, "left", out.completed_columns);
  return out;
}

ReducedSecondOrderModel assemble_reduced(const SecondOrderIndex3System& sys,
                                         const Matrix& V, const Matrix& W) {
  ReducedSecondOrderModel rom;
  const Matrix Wt = W.transpose();
  rom.Mr = Wt * (sys.M * V);
  rom.Dr = Wt * (sys.D * V);
  rom.Kr = Wt * (sys.K * V);
  rom.Fr = Wt * sys.F;
  rom.Lr = sys.L * V;
  Eigen::PartialPivLU<Matrix> lu(rom.Mr);
  if (rom.Mr.size() == 0 || !(lu.rcond() > 1e-14) || !rom.all_finite())
    throw Error(ErrorCode::kSingularReduced, "reduced mass matrix is singular");
  return rom;
}

IrkaResult irka_reduce(const SecondOrderIndex3System& sys, const IrkaOptions& options) {
  const Index r = options.r;
  if (r < 1 || r > sys.n1() - sys.n2())
    throw Error(ErrorCode::kParameter, "reduced order must lie in [1, n1 - n2]");
  if (options.max_iter < 1) throw Error(ErrorCode::kParameter, "max_iter must be positive");

  ShiftSet shifts = options.initial_shifts
                        ? *options.initial_shifts
                        : init_shifts(r, sys.inputs(), sys.outputs(), options.band, options.seed);
  if (static_cast<Index>(shifts.size()) != r)
    throw Error(ErrorCode::kParameter, "initial shift count differs from r");

  using Clock = std::chrono::steady_clock;
  IrkaResult result;
  bool have_result = false;
  for (int it = 1; it <= options.max_iter; ++it) {
    const auto start = Clock::now();
    RealBases bases;
    ReducedSecondOrderModel rom;
    try {
      bases = build_bases(sys, shifts, options.workers);
      rom = assemble_reduced(sys, bases.V, bases.W);
    } catch (const ShiftError&) {
      throw;
    } catch (const Error& e) {
      if (!have_result) throw;
      result.trace.status = IrkaStatus::kStagnated;
      result.trace.note = e.what();
      return result;
    }
    if (options.on_basis) options.on_basis(BasisSnapshot{it, shifts, bases, rom});

    result.rom = rom;
    result.shifts = shifts;
    result.bases = std::move(bases);
    have_result = true;

    IterationRecord record;
    record.iteration = it;
    record.sorted_shifts = shifts.sorted_alphas();

    ShiftSet next;
    try {
      next = update_shifts(rom, r);
    } catch (const Error& e) {
      record.shift_change = std::numeric_limits<double>::quiet_NaN();
      record.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
      result.trace.iterations.push_back(std::move(record));
      result.trace.status = IrkaStatus::kStagnated;
      result.trace.note = e.what();
      return result;
    }
    record.shift_change = shift_change(next, shifts);
    record.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const double d = record.shift_change;
    result.trace.iterations.push_back(std::move(record));
    if (d < options.tol) {
      result.trace.status = IrkaStatus::kConverged;
      return result;
    }
    shifts = std::move(next);
  }
  result.trace.status = IrkaStatus::kMaxIterations;
  return result;
}

std::vector<InterpolationResidual> check_interpolation(
    const SecondOrderIndex3System& sys, const ReducedSecondOrderModel& rom,
    const ShiftSet& shifts) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  const ComplexSparseMatrix F = sys.F.cast<Complex>();
  const ComplexSparseMatrix L = sys.L.cast<Complex>();

  auto full_tb = [&](Complex s, const ComplexVector& b) -> ComplexVector {
    SaddleOperator op(sys, s, SaddleSide::kRight);
    return L * op.solve(F * b);
  };
  auto reduced_tb = [&](Complex s, const ComplexVector& b) -> ComplexVector {
    return reduced_transfer(rom, s) * b;
  };

  std::vector<InterpolationResidual> out;
  out.reserve(shifts.size());
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    InterpolationResidual res;
    res.alpha = shifts.alpha(i);
    const ComplexVector& b = shifts.b(i);
    const ComplexVector& c = shifts.c(i);
    try {
      const ComplexVector tb = full_tb(res.alpha, b);
      const ComplexVector rb = reduced_tb(res.alpha, b);
      res.zeroth = (tb - rb).norm() / tb.norm();
      const Complex ct = (c.transpose() * tb)(0, 0);
      const Complex cr = (c.transpose() * rb)(0, 0);
      res.bitangential = std::abs(ct - cr) / std::abs(ct);

      const double h = 1e-6 * std::max(1.0, std::abs(res.alpha));
      const Complex dt = (c.transpose() * (full_tb(res.alpha + h, b) - full_tb(res.alpha - h, b)))(0, 0) / (2.0 * h);
      const Complex dr = (c.transpose() * (reduced_tb(res.alpha + h, b) - reduced_tb(res.alpha - h, b)))(0, 0) / (2.0 * h);
      res.derivative = std::abs(dt - dr) / std::abs(dt);
    } catch (const Error&) {
      res.zeroth = res.bitangential = res.derivative = kNaN;
    }
    out.push_back(res);
  }
  return out;
}

}  // namespace somor
