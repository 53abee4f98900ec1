#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "somor/balanced_truncation.hpp"
#include "somor/benchmark_models.hpp"
#include "somor/error.hpp"
#include "somor/frequency_response.hpp"
#include "somor/irka.hpp"
#include "somor/projection.hpp"
#include "somor/saddle.hpp"

namespace somor::cli {

namespace {

void add(CheckList& out, std::string name, double value, double threshold,
         std::string detail = {}) {
  out.push_back({std::move(name), value <= threshold, value, threshold, std::move(detail)});
}

void add_failure(CheckList& out, std::string name, const std::exception& e) {
  out.push_back({std::move(name), false, std::numeric_limits<double>::quiet_NaN(), 0.0, e.what()});
}

const Complex kTestShifts[] = {{0.5, 0.0}, {0.1, 1.3}, {1.0, 0.2}, {2.0, -0.7}, {0.05, 0.4}};

}  // namespace

void check_projector(const SecondOrderIndex3System& sys, const std::string& label, CheckList& out) {
  try {
    const Projector proj = build_projector(sys);
    const ProjectorResiduals pr = projector_residuals(sys, proj);
    add(out, label + "/projector_idempotent", pr.idempotency, 1e-10);
    add(out, label + "/projector_mass_symmetric", pr.mass_symmetry, 1e-10);
    add(out, label + "/projector_annihilates_constraints", pr.null_space, 1e-10);
    const SplitResiduals sr = split_residuals(proj, split_projector(proj));
    add(out, label + "/split_factorization", sr.factorization, 1e-10);
    add(out, label + "/split_biorthogonal", sr.biorthogonality, 1e-10);
  } catch (const Error& e) {
    add_failure(out, label + "/projector", e);
  }
}

void check_saddle_equivalence(const SecondOrderIndex3System& sys, const std::string& label,
                              CheckList& out) {
  try {
    const ProjectorSplit split = split_projector(build_projector(sys));
    const ProjectedSystem psys = project_system(sys, split);
    const ComplexMatrix Ft = psys.Ft.cast<Complex>();
    const ComplexMatrix Psi = split.Psi_r.cast<Complex>();
    const double g_norm = Matrix(sys.G).norm();
    double worst = 0.0, worst_constraint = 0.0;
    for (const Complex a : kTestShifts) {
      ComplexVector b = ComplexVector::Ones(sys.inputs());
      b /= b.norm();
      const ComplexVector v = solve_right(sys, a, b);
      const ComplexMatrix Q = (a * a * psys.Mt + a * psys.Dt + psys.Kt).cast<Complex>();
      const ComplexVector lifted = Psi * Q.partialPivLu().solve(Ft * b);
      worst = std::max(worst, (v - lifted).norm() / lifted.norm());
      worst_constraint =
          std::max(worst_constraint, (sys.G.cast<Complex>() * v).norm() / (v.norm() * g_norm));
    }
    add(out, label + "/saddle_matches_projected", worst, 1e-8);
    add(out, label + "/saddle_constraint_residual", worst_constraint, 1e-10);
  } catch (const Error& e) {
    add_failure(out, label + "/saddle_equivalence", e);
  }
}

void check_realizations(const SecondOrderIndex3System& sys, const std::string& label,
                        std::size_t points, CheckList& out) {
  try {
    const ProjectedSystem psys = project_system(sys, split_projector(build_projector(sys)));
    const FrequencyGrid grid = FrequencyGrid::logspace(1e-2, 1e1, points);
    double worst = 0.0;
    for (double w : grid.omegas) {
      const Complex s(0.0, w);
      const ComplexMatrix t = full_transfer(sys, s);
      const ComplexMatrix tt = projected_transfer(psys, s);
      worst = std::max(worst, (t - tt).norm() / tt.norm());
    }
    add(out, label + "/realizations_agree", worst, 1e-8);
  } catch (const Error& e) {
    add_failure(out, label + "/realizations", e);
  }
}

void check_interpolation(const SecondOrderIndex3System& sys, Index r, int builds,
                         const std::string& label, CheckList& out) {
  try {
    double zeroth = 0.0, tangential = 0.0, derivative = 0.0;
    bool unavailable = false;
    IrkaOptions opts;
    opts.r = r;
    opts.max_iter = builds;
    opts.tol = 0.0;
    opts.band = {0.05, 2.0};
    opts.on_basis = [&](const BasisSnapshot& snap) {
      for (const auto& res : somor::check_interpolation(sys, snap.rom, snap.shifts)) {
        if (std::isnan(res.zeroth) || std::isnan(res.derivative)) unavailable = true;
        zeroth = std::max(zeroth, res.zeroth);
        tangential = std::max(tangential, res.bitangential);
        derivative = std::max(derivative, res.derivative);
      }
    };
    irka_reduce(sys, opts);
    const std::string tag = label + "/r" + std::to_string(r);
    add(out, tag + "/interpolation_zeroth", zeroth, 1e-6);
    add(out, tag + "/interpolation_bitangential", tangential, 1e-6);
    add(out, tag + "/interpolation_derivative", derivative, 1e-4,
        unavailable ? "some shifts could not be evaluated" : "");
    if (unavailable) out.back().passed = false;
  } catch (const Error& e) {
    add_failure(out, label + "/interpolation", e);
  }
}

void check_balanced_truncation(Index n, Index k, std::uint64_t seed, const std::string& label,
                               CheckList& out) {
  try {
    const FirstOrderRealization sys = gen_random_first_order({n, 2, 2, seed});
    const Matrix Xc = solve_lyapunov(sys.A, sys.E, sys.B);
    const Matrix Xo = solve_lyapunov(sys.A.transpose(), sys.E.transpose(), sys.C.transpose());
    add(out, label + "/lyapunov_controllability", lyapunov_residual(sys.A, sys.E, sys.B, Xc), 1e-8);
    add(out, label + "/lyapunov_observability",
        lyapunov_residual(sys.A.transpose(), sys.E.transpose(), sys.C.transpose(), Xo), 1e-8);

    const BalancedReduction bt = balanced_truncate(sys, k);
    double discarded = 0.0;
    for (Index i = bt.reduced.order(); i < bt.hankel.size(); ++i) discarded += bt.hankel(i);
    const FrequencyGrid grid = FrequencyGrid::logspace(1e-3, 1e3, 50);
    double worst = 0.0;
    for (double w : grid.omegas) {
      const Complex s(0.0, w);
      worst = std::max(worst, sigma_max(first_order_transfer(sys, s) -
                                        first_order_transfer(bt.reduced, s)));
    }
    add(out, label + "/bt_error_bound", worst, 2.0 * discarded * 1.1);
  } catch (const Error& e) {
    add_failure(out, label + "/balanced_truncation", e);
  }
}

}  // namespace somor::cli
