#include "somor/frequency_response.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "somor/error.hpp"
#include "somor/parallel.hpp"
#include "somor/saddle.hpp"

namespace somor {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename Eval>
FrequencyResponseTable sweep(const FrequencyGrid& grid, int workers, Eval&& eval) {
  FrequencyResponseTable t;
  const std::size_t n = grid.size();
  t.omegas = grid.omegas;
  t.values.assign(n, ComplexMatrix());
  t.sigma_max.assign(n, kNaN);
  std::vector<char> ok(n, 0);
  parallel_for(n, workers, [&](std::size_t k) {
    try {
      t.values[k] = eval(Complex(0.0, grid.omegas[k]));
      t.sigma_max[k] = sigma_max(t.values[k]);
      ok[k] = 1;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPole && e.code() != ErrorCode::kShiftAtEigenvalue) throw;
      t.values[k] = ComplexMatrix();
    }
  });
  t.valid.assign(ok.begin(), ok.end());
  return t;
}

ComplexMatrix dense_second_order(const Matrix& M, const Matrix& D, const Matrix& K,
                                 const Matrix& F, const Matrix& L, Complex s) {
  const ComplexMatrix resolvent =
      (s * s) * M.cast<Complex>() + s * D.cast<Complex>() + K.cast<Complex>();
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent);
  if (!(lu.rcond() > 1e-14)) throw Error(ErrorCode::kPole, "evaluation at a pole");
  return L.cast<Complex>() * lu.solve(F.cast<Complex>());
}

void write_field(std::ostream& out, double v, bool defined) {
  if (defined && std::isfinite(v)) out << v;
}

}  // namespace

FrequencyGrid FrequencyGrid::logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw Error(ErrorCode::kParameter, "grid needs 0 < lo < hi and at least 2 points");
  FrequencyGrid g;
  g.omegas.resize(n);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t k = 0; k < n; ++k)
    g.omegas[k] = std::pow(10.0, a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  g.omegas.front() = lo;
  g.omegas.back() = hi;
  return g;
}

double sigma_max(const ComplexMatrix& t) {
  if (t.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(t);
  return svd.singularValues()(0);
}

ComplexMatrix full_transfer(const SecondOrderIndex3System& sys, Complex s) {
  SaddleOperator op(sys, s, SaddleSide::kRight);
  const ComplexMatrix x = op.solve(ComplexMatrix(sys.F.cast<Complex>()));
  return sys.L.cast<Complex>() * x;
}

ComplexMatrix reduced_transfer(const ReducedSecondOrderModel& rom, Complex s) {
  return dense_second_order(rom.Mr, rom.Dr, rom.Kr, rom.Fr, rom.Lr, s);
}

ComplexMatrix first_order_transfer(const FirstOrderRealization& sys, Complex s) {
  const ComplexMatrix pencil = s * sys.E.cast<Complex>() - sys.A.cast<Complex>();
  Eigen::PartialPivLU<ComplexMatrix> lu(pencil);
  if (!(lu.rcond() > 1e-14)) throw Error(ErrorCode::kPole, "evaluation at a pole");
  return sys.C.cast<Complex>() * lu.solve(sys.B.cast<Complex>());
}

FrequencyResponseTable full_response(const SecondOrderIndex3System& sys,
                                     const FrequencyGrid& grid, int workers) {
  return sweep(grid, workers, [&](Complex s) { return full_transfer(sys, s); });
}

FrequencyResponseTable reduced_response(const ReducedSecondOrderModel& rom,
                                        const FrequencyGrid& grid) {
  return sweep(grid, 1, [&](Complex s) { return reduced_transfer(rom, s); });
}

FrequencyResponseTable first_order_response(const FirstOrderRealization& sys,
                                            const FrequencyGrid& grid) {
  return sweep(grid, 1, [&](Complex s) { return first_order_transfer(sys, s); });
}

FrequencyResponseTable projected_response(const ProjectedSystem& psys,
                                          const FrequencyGrid& grid) {
  return sweep(grid, 1, [&](Complex s) { return projected_transfer(psys, s); });
}

double ErrorCurves::max_relative() const {
  double best = 0.0;
  for (std::size_t k = 0; k < relative.size(); ++k)
    if (relative_defined[k]) best = std::max(best, relative[k]);
  return best;
}

ErrorCurves error_curves(const FrequencyResponseTable& full,
                         const FrequencyResponseTable& reduced) {
  if (full.omegas != reduced.omegas)
    throw Error(ErrorCode::kParameter, "response tables use different grids");
  ErrorCurves e;
  const std::size_t n = full.size();
  e.omegas = full.omegas;
  e.absolute.assign(n, kNaN);
  e.relative.assign(n, kNaN);
  e.relative_defined.assign(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (!full.valid[k] || !reduced.valid[k]) continue;
    e.absolute[k] = sigma_max(full.values[k] - reduced.values[k]);
    if (full.sigma_max[k] > 0.0) {
      e.relative[k] = e.absolute[k] / full.sigma_max[k];
      e.relative_defined[k] = true;
    }
  }
  return e;
}

void write_response_csv(std::ostream& out, const FrequencyResponseTable* full,
                        const FrequencyResponseTable* reduced) {
  const FrequencyResponseTable* ref = full ? full : reduced;
  if (!ref) throw Error(ErrorCode::kParameter, "nothing to write");
  std::optional<ErrorCurves> err;
  if (full && reduced) err = error_curves(*full, *reduced);
  const auto old_precision = out.precision(17);
  out << "omega,sigma_full,sigma_reduced,abs_err,rel_err\n";
  for (std::size_t k = 0; k < ref->size(); ++k) {
    out << ref->omegas[k] << ',';
    if (full) write_field(out, full->sigma_max[k], full->valid[k]);
    out << ',';
    if (reduced) write_field(out, reduced->sigma_max[k], reduced->valid[k]);
    out << ',';
    if (err) write_field(out, err->absolute[k], true);
    out << ',';
    if (err) write_field(out, err->relative[k], err->relative_defined[k]);
    out << '\n';
  }
  out.precision(old_precision);
}

void write_channel_csv(std::ostream& out, const FrequencyResponseTable* full,
                       const FrequencyResponseTable* reduced) {
  const FrequencyResponseTable* ref = full ? full : reduced;
  if (!ref) throw Error(ErrorCode::kParameter, "nothing to write");
  Index q = 0, m = 0;
  for (std::size_t k = 0; k < ref->size() && q == 0; ++k)
    if (ref->valid[k]) {
      q = ref->values[k].rows();
      m = ref->values[k].cols();
    }
  const auto old_precision = out.precision(17);
  out << "omega";
  for (const char* tag : {"full", "reduced"}) {
    if ((tag[0] == 'f' && !full) || (tag[0] == 'r' && !reduced)) continue;
    for (Index i = 0; i < q; ++i)
      for (Index j = 0; j < m; ++j) out << ',' << tag << '_' << i + 1 << '_' << j + 1;
  }
  out << '\n';
  for (std::size_t k = 0; k < ref->size(); ++k) {
    out << ref->omegas[k];
    for (const FrequencyResponseTable* t : {full, reduced}) {
      if (!t) continue;
      for (Index i = 0; i < q; ++i)
        for (Index j = 0; j < m; ++j) {
          out << ',';
          if (t->valid[k]) out << std::abs(t->values[k](i, j));
        }
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace somor
