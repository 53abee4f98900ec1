#include <gtest/gtest.h>

#include "somor/benchmark_models.hpp"
#include "somor/error.hpp"
#include "somor/frequency_response.hpp"
#include "somor/projection.hpp"
#include "support.hpp"

namespace somor {
namespace {

using test::two_mass;

TEST(Projector, HandCaseIsCoordinateProjector) {
  const auto sys = two_mass(Matrix::Identity(2, 2), (Matrix(1, 2) << 1, 0).finished());
  const auto proj = build_projector(sys);
  EXPECT_EQ(proj.rank, 1);
  EXPECT_LT((proj.P - (Matrix(2, 2) << 0, 0, 0, 1).finished()).norm(), 1e-15);
}

TEST(Projector, IdentityMassGivesOrthogonalProjector) {
  auto sys = gen_random({.n1 = 15, .n2 = 3, .seed = 2});
  sys.M = test::sparse(Matrix::Identity(15, 15));
  const Matrix G = to_dense(sys.G);
  const Matrix ref =
      Matrix::Identity(15, 15) - G.transpose() * (G * G.transpose()).inverse() * G;
  const auto proj = build_projector(sys);
  EXPECT_LT((proj.P - ref).norm(), 1e-12);
  EXPECT_LT((proj.P - proj.P.transpose()).norm(), 1e-12);
}

TEST(Projector, RandomInvariants) {
  const auto sys = gen_random({.n1 = 50, .n2 = 5, .seed = 1});
  const auto proj = build_projector(sys);
  EXPECT_EQ(proj.rank, 45);
  const auto r = projector_residuals(sys, proj);
  EXPECT_LE(r.idempotency, 1e-10);
  EXPECT_LE(r.mass_symmetry, 1e-10);
  EXPECT_LE(r.null_space, 1e-10);
}

TEST(Projector, CapRefused) {
  const auto sys = gen_random({.n1 = 50, .n2 = 5, .seed = 1});
  try {
    build_projector(sys, 20);
    FAIL() << "expected the dense cap to refuse";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
}

TEST(Split, RankOneDiagonal) {
  Projector p;
  p.P = (Matrix(2, 2) << 0, 0, 0, 1).finished();
  p.rank = 1;
  const auto s = split_projector(p);
  ASSERT_EQ(s.Psi_r.cols(), 1);
  // Unique up to sign.
  EXPECT_NEAR(std::abs(s.Psi_r(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(s.Psi_r(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(s.Psi_l(1, 0) * s.Psi_r(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(s.Psi_l(0, 0), 0.0, 1e-15);
}

TEST(Split, Invariants) {
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    const auto sys = gen_random({.n1 = 50, .n2 = 5, .seed = seed});
    const auto proj = build_projector(sys);
    const auto split = split_projector(proj);
    const auto r = split_residuals(proj, split);
    EXPECT_LE(r.factorization, 1e-10);
    EXPECT_LE(r.biorthogonality, 1e-10);
  }
}

TEST(ProjectSystem, HandScalarSystem) {
  const auto sys = two_mass((Matrix(2, 2) << 2, -1, -1, 2).finished(),
                            (Matrix(1, 2) << 1, 0).finished());
  const auto psys = project_system(sys, split_projector(build_projector(sys)));
  ASSERT_EQ(psys.order(), 1);
  EXPECT_NEAR(psys.Mt(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(psys.Kt(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(psys.Dt(0, 0), 0.0, 1e-15);
}

TEST(ProjectSystem, ZeroInputMapsToZero) {
  auto sys = gen_random({.n1 = 20, .n2 = 2, .seed = 3});
  sys.F = test::sparse(Matrix::Zero(20, 2));
  const auto psys = project_system(sys, split_projector(build_projector(sys)));
  EXPECT_EQ(psys.Ft.norm(), 0.0);
}

TEST(ProjectedTransfer, MatchesFullTransfer) {
  const auto sys = gen_random({.n1 = 50, .n2 = 5, .seed = 1});
  const auto psys = project_system(sys, split_projector(build_projector(sys)));
  const auto grid = FrequencyGrid::logspace(1e-2, 1e1, 20);
  for (double w : grid.omegas) {
    const Complex s(0, w);
    EXPECT_LT(test::rel(projected_transfer(psys, s), full_transfer(sys, s)), 1e-8) << w;
  }
}

TEST(ProjectedTransfer, StaticGain) {
  const auto sys = two_mass((Matrix(2, 2) << 2, -1, -1, 2).finished(),
                            (Matrix(1, 2) << 1, 0).finished());
  const auto psys = project_system(sys, split_projector(build_projector(sys)));
  const ComplexMatrix t = projected_transfer(psys, 0.0);
  const double ref = (psys.Lt * psys.Kt.inverse() * psys.Ft)(0, 0);
  EXPECT_NEAR(std::abs(t(0, 0) - ref), 0.0, 1e-15);
}

TEST(ProjectedTransfer, HighFrequencyRollOff) {
  const auto sys = gen_random({.n1 = 20, .n2 = 2, .seed = 4});
  const auto psys = project_system(sys, split_projector(build_projector(sys)));
  const double s = 1e6;
  const double mag = projected_transfer(psys, Complex(0, s)).norm();
  const double ref = (psys.Lt * psys.Mt.inverse() * psys.Ft).norm() / (s * s);
  EXPECT_GT(mag, ref / 2);
  EXPECT_LT(mag, ref * 2);
}

TEST(NullSpace, OrthonormalBasisOfKernel) {
  const auto sys = gen_random({.n1 = 30, .n2 = 4, .seed = 5});
  const Matrix Z = null_space_basis(sys.G);
  ASSERT_EQ(Z.cols(), 26);
  EXPECT_LT((Z.transpose() * Z - Matrix::Identity(26, 26)).norm(), 1e-12);
  EXPECT_LT((to_dense(sys.G) * Z).norm(), 1e-12);
}

}  // namespace
}  // namespace somor
