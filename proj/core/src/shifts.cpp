#include "somor/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "somor/balanced_truncation.hpp"
#include "somor/error.hpp"

namespace somor {

namespace {

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

ComplexVector normalized(ComplexVector v) {
  const double n = v.norm();
  if (n > 0.0 && std::isfinite(n)) return v / n;
  ComplexVector e = ComplexVector::Zero(v.size());
  if (e.size() > 0) e(0) = 1.0;
  return e;
}

double stability_margin(const ComplexVector& lambda) {
  return 1e-10 * (lambda.size() > 0 ? lambda.cwiseAbs().maxCoeff() : 0.0);
}

bool safely_stable(const FirstOrderRealization& fo) {
  const ComplexVector lambda = pencil_eigenvalues(fo);
  const double margin = stability_margin(lambda);
  return (lambda.real().array() < -margin).all();
}

// Order-r approximation of the embedded model that keeps every unstable mode
// and balance-truncates the stable part, so a Petrov-Galerkin model that came
// out unstable still yields r poles.
FirstOrderRealization reduce_keeping_unstable(const FirstOrderRealization& fo, Index r) {
  const Index n = fo.order();
  const Eigen::PartialPivLU<Matrix> elu(fo.E);
  const Matrix N = elu.solve(fo.A);
  const Matrix EB = elu.solve(fo.B);

  Eigen::EigenSolver<Matrix> es(N);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::kSingularReduced, "eigenvalue iteration failed");
  const ComplexVector lambda = es.eigenvalues();
  const ComplexMatrix Z = es.eigenvectors();

  // Real bases of the stable and unstable invariant subspaces; poles within
  // rounding distance of the imaginary axis go with the unstable ones.
  const double margin = stability_margin(lambda);
  std::vector<Vector> stable, unstable;
  for (Index i = 0; i < n; ++i) {
    if (lambda(i).imag() < 0.0) continue;
    auto& dst = lambda(i).real() < -margin ? stable : unstable;
    dst.push_back(Z.col(i).real());
    if (lambda(i).imag() > 0.0) dst.push_back(Z.col(i).imag());
  }
  const auto ns = static_cast<Index>(stable.size());
  const auto nu = static_cast<Index>(unstable.size());
  if (ns + nu != n) throw Error(ErrorCode::kSingularReduced, "unpaired complex pole");
  if (nu > r)
    throw Error(ErrorCode::kStability, "reduced model has more than r unstable poles");

  Matrix T(n, n);
  for (Index j = 0; j < ns; ++j) T.col(j) = stable[j];
  for (Index j = 0; j < nu; ++j) T.col(ns + j) = unstable[j];
  const Eigen::PartialPivLU<Matrix> tlu(T);
  if (!(tlu.rcond() > 1e-12))
    throw Error(ErrorCode::kSingularReduced, "embedded pencil is defective");
  const Matrix Ab = tlu.solve(N * T);
  const Matrix Bb = tlu.solve(EB);
  const Matrix Cb = fo.C * T;

  const Index ks = r - nu;
  FirstOrderRealization out;
  out.E = Matrix::Identity(r, r);
  out.A = Matrix::Zero(r, r);
  out.B.resize(r, fo.B.cols());
  out.C.resize(fo.C.rows(), r);
  if (ks > 0) {
    FirstOrderRealization part{Matrix::Identity(ns, ns), Ab.topLeftCorner(ns, ns),
                               Bb.topRows(ns), Cb.leftCols(ns)};
    const BalancedReduction bt = balanced_truncate(part, ks);
    if (bt.order_clipped)
      throw Error(ErrorCode::kSingularReduced,
                  "embedded reduced model has numerical McMillan degree below r");
    out.A.topLeftCorner(ks, ks) = bt.reduced.A;
    out.B.topRows(ks) = bt.reduced.B;
    out.C.leftCols(ks) = bt.reduced.C;
  }
  out.A.bottomRightCorner(nu, nu) = Ab.bottomRightCorner(nu, nu);
  out.B.bottomRows(nu) = Bb.bottomRows(nu);
  out.C.rightCols(nu) = Cb.rightCols(nu);
  return out;
}

ComplexVector random_unit(std::mt19937_64& rng, Index n, bool complex_valued) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = complex_valued ? normal(rng) : 0.0;
    v(i) = Complex(re, im);
  }
  return normalized(std::move(v));
}

}  // namespace

void ShiftSet::add_real(double alpha, const ComplexVector& b, const ComplexVector& c) {
  partner_.push_back(alphas_.size());
  alphas_.emplace_back(alpha, 0.0);
  b_.push_back(b.real().cast<Complex>());
  c_.push_back(c.real().cast<Complex>());
}

void ShiftSet::add_pair(Complex alpha, const ComplexVector& b, const ComplexVector& c) {
  const bool flip = alpha.imag() < 0.0;
  const Complex a = flip ? std::conj(alpha) : alpha;
  const ComplexVector bb = flip ? ComplexVector(b.conjugate()) : b;
  const ComplexVector cc = flip ? ComplexVector(c.conjugate()) : c;
  const std::size_t i = alphas_.size();
  alphas_.push_back(a);
  b_.push_back(bb);
  c_.push_back(cc);
  partner_.push_back(i + 1);
  alphas_.push_back(std::conj(a));
  b_.push_back(bb.conjugate());
  c_.push_back(cc.conjugate());
  partner_.push_back(i);
}

void ShiftSet::scale_shift(std::size_t i, double factor) {
  alphas_[i] *= factor;
  const std::size_t j = partner_[i];
  if (j != i) alphas_[j] = std::conj(alphas_[i]);
}

bool ShiftSet::conjugate_closed(double tol) const {
  for (std::size_t i = 0; i < size(); ++i) {
    const std::size_t j = partner_[i];
    const double scale = std::max(1.0, std::abs(alphas_[i]));
    if (j == i) {
      if (std::abs(alphas_[i].imag()) > tol * scale) return false;
      if (b_[i].imag().norm() > tol || c_[i].imag().norm() > tol) return false;
      continue;
    }
    if (j >= size() || partner_[j] != i) return false;
    if (std::abs(alphas_[j] - std::conj(alphas_[i])) > tol * scale) return false;
    if ((b_[j] - b_[i].conjugate()).norm() > tol) return false;
    if ((c_[j] - c_[i].conjugate()).norm() > tol) return false;
  }
  return true;
}

bool ShiftSet::right_half_plane() const {
  return std::all_of(alphas_.begin(), alphas_.end(),
                     [](Complex a) { return a.real() > 0.0; });
}

std::vector<Complex> ShiftSet::sorted_alphas() const {
  std::vector<Complex> sorted = alphas_;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  return sorted;
}

ShiftSet init_shifts(Index r, Index m, Index q, Band band, std::uint64_t seed) {
  if (r < 1) throw Error(ErrorCode::kParameter, "r must be at least 1");
  if (!(band.lo > 0.0) || !(band.lo < band.hi))
    throw Error(ErrorCode::kParameter, "band must satisfy 0 < lo < hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_mag(std::log(band.lo), std::log(band.hi));
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);

  ShiftSet set;
  for (Index k = 0; k < r / 2; ++k) {
    const double sigma = std::exp(log_mag(rng));
    double theta = angle(rng);
    if (theta <= 0.0) theta = 1e-3;
    const ComplexVector b = random_unit(rng, m, true);
    const ComplexVector c = random_unit(rng, q, true);
    set.add_pair(std::polar(sigma, theta), b, c);
  }
  if (r % 2 == 1) {
    const double sigma = std::exp(log_mag(rng));
    const ComplexVector b = random_unit(rng, m, false);
    const ComplexVector c = random_unit(rng, q, false);
    set.add_real(sigma, b, c);
  }
  return set;
}

double shift_change(const ShiftSet& next, const ShiftSet& prev) {
  const auto a = next.sorted_alphas();
  const auto b = prev.sorted_alphas();
  if (a.size() != b.size())
    throw Error(ErrorCode::kParameter, "shift sets differ in size");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

ShiftSet update_shifts(const ReducedSecondOrderModel& rom, Index r) {
  FirstOrderRealization fo;
  try {
    fo = embed_first_order(rom);
  } catch (const Error& e) {
    throw Error(ErrorCode::kSingularReduced, e.what());
  }
  FirstOrderRealization reduced;
  if (safely_stable(fo)) {
    BalancedReduction bt = balanced_truncate(fo, r);
    if (bt.order_clipped)
      throw Error(ErrorCode::kSingularReduced,
                  "embedded reduced model has numerical McMillan degree below r");
    reduced = std::move(bt.reduced);
  } else {
    reduced = reduce_keeping_unstable(fo, r);
  }
  const Matrix& A = reduced.A;
  const Matrix& B = reduced.B;
  const Matrix& C = reduced.C;

  Eigen::EigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::kSingularReduced, "eigenvalue iteration failed");
  const ComplexVector lambda = es.eigenvalues();
  const ComplexMatrix Z = es.eigenvectors();
  Eigen::PartialPivLU<ComplexMatrix> zlu(Z);
  if (!(zlu.rcond() > 1e-12))
    throw Error(ErrorCode::kSingularReduced, "truncated pencil is defective");
  // Rows of Z^-1 are the left eigenvectors y_i^* scaled so y_i^* z_j = delta_ij.
  const ComplexMatrix Yh = zlu.inverse();
  const ComplexMatrix Bt = Yh * B.cast<Complex>();   // row i: y_i^* B
  const ComplexMatrix Cz = C.cast<Complex>() * Z;    // col i: C z_i

  auto mirror = [](Complex l) {
    Complex a = -l;
    if (a.real() <= 0.0) a = Complex(std::abs(a.real()), a.imag());
    if (!(a.real() > 0.0))
      throw Error(ErrorCode::kStability, "reduced pole on the imaginary axis");
    return a;
  };

  ShiftSet next;
  const Index k = lambda.size();
  for (Index i = 0; i < k; ++i) {
    if (lambda(i).imag() == 0.0) {
      next.add_real(mirror(lambda(i)).real(), normalized(Bt.row(i).transpose().real().cast<Complex>()),
                    normalized(Cz.col(i).real().cast<Complex>()));
      continue;
    }
    if (lambda(i).imag() < 0.0) continue;  // taken with its partner
    Index j = -1;
    if (i + 1 < k && lambda(i + 1) == std::conj(lambda(i))) {
      j = i + 1;
    } else {
      double best = std::numeric_limits<double>::infinity();
      for (Index t = 0; t < k; ++t) {
        const double d = std::abs(lambda(t) - std::conj(lambda(i)));
        if (t != i && lambda(t).imag() < 0.0 && d < best) {
          best = d;
          j = t;
        }
      }
      if (j < 0) throw Error(ErrorCode::kSingularReduced, "unpaired complex pole");
    }
    const Complex a = 0.5 * (mirror(lambda(i)) + std::conj(mirror(lambda(j))));
    const ComplexVector b =
        0.5 * (Bt.row(i).transpose() + Bt.row(j).transpose().conjugate());
    const ComplexVector c = 0.5 * (Cz.col(i) + Cz.col(j).conjugate());
    next.add_pair(a, normalized(b), normalized(c));
  }
  if (static_cast<Index>(next.size()) != r)
    throw Error(ErrorCode::kSingularReduced, "shift update produced the wrong count");
  return next;
}

}  // namespace somor
