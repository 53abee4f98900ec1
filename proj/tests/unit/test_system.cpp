#include <gtest/gtest.h>

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "somor/benchmark_models.hpp"
#include "somor/error.hpp"
#include "support.hpp"

namespace somor {
namespace {

using test::two_mass;

TEST(Validate, AcceptsSingleConstraintPair) {
  const auto sys = two_mass(Matrix::Identity(2, 2), (Matrix(1, 2) << 1, -1).finished());
  const auto report = validate_system(sys);
  EXPECT_TRUE(report.accepted()) << report.summary();
  EXPECT_EQ(report.g_rank, 1);
}

TEST(Validate, RejectsDuplicatedConstraintRows) {
  auto sys = gen_random({.n1 = 3, .n2 = 1, .m = 1, .q = 1, .seed = 0});
  sys.G = test::sparse((Matrix(2, 3) << 1, -1, 0, 1, -1, 0).finished());
  EXPECT_FALSE(validate_system(sys).g_full_rank);
  try {
    require_valid(sys);
    FAIL() << "expected a degeneracy error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstraintDegeneracy);
  }
}

TEST(Validate, RejectsMismatchedDimensions) {
  SecondOrderIndex3System sys = two_mass(Matrix::Identity(2, 2), Matrix::Ones(1, 2));
  sys.K = test::sparse(Matrix::Identity(3, 3));
  EXPECT_FALSE(validate_system(sys).dimensions_ok);
  EXPECT_THROW(require_valid(sys), Error);
}

TEST(Validate, AcceptsDefaultDsms) {
  const auto sys = gen_dsms({});
  EXPECT_EQ(sys.n1() + sys.n2(), 2200);
  EXPECT_TRUE(validate_system(sys).accepted());
}

TEST(Validate, ConstraintRankScalesWithEntries) {
  EXPECT_EQ(constraint_rank(test::sparse((Matrix(2, 3) << 1e8, 0, 0, 0, 1e8, 0).finished())), 2);
  EXPECT_EQ(constraint_rank(test::sparse((Matrix(2, 3) << 1e-8, 0, 0, 2e-8, 0, 0).finished())), 1);
}

ReducedSecondOrderModel scalar_rom(double m, double d, double k) {
  ReducedSecondOrderModel rom;
  rom.Mr = Matrix::Constant(1, 1, m);
  rom.Dr = Matrix::Constant(1, 1, d);
  rom.Kr = Matrix::Constant(1, 1, k);
  rom.Fr = Matrix::Ones(1, 1);
  rom.Lr = Matrix::Ones(1, 1);
  return rom;
}

std::vector<Complex> sorted(ComplexVector v) {
  std::vector<Complex> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

TEST(Embedding, BlockLayout) {
  ReducedSecondOrderModel rom;
  rom.Mr = (Matrix(2, 2) << 2, 0, 0, 3).finished();
  rom.Dr = (Matrix(2, 2) << 1, 0.5, 0.5, 1).finished();
  rom.Kr = (Matrix(2, 2) << 4, -1, -1, 4).finished();
  rom.Fr = (Matrix(2, 1) << 1, 2).finished();
  rom.Lr = (Matrix(1, 2) << 3, 4).finished();
  const auto fo = embed_first_order(rom);
  ASSERT_EQ(fo.order(), 4);
  EXPECT_EQ(fo.E.topLeftCorner(2, 2), Matrix::Identity(2, 2));
  EXPECT_EQ(fo.E.topRightCorner(2, 2), Matrix::Zero(2, 2));
  EXPECT_EQ(fo.E.bottomRightCorner(2, 2), rom.Mr);
  EXPECT_EQ(fo.A.topLeftCorner(2, 2), Matrix::Zero(2, 2));
  EXPECT_EQ(fo.A.topRightCorner(2, 2), Matrix::Identity(2, 2));
  EXPECT_EQ(fo.A.bottomLeftCorner(2, 2), -rom.Kr);
  EXPECT_EQ(fo.A.bottomRightCorner(2, 2), -rom.Dr);
  EXPECT_EQ(fo.B.topRows(2), Matrix::Zero(2, 1));
  EXPECT_EQ(fo.B.bottomRows(2), rom.Fr);
  EXPECT_EQ(fo.C.leftCols(2), rom.Lr);
  EXPECT_EQ(fo.C.rightCols(2), Matrix::Zero(1, 2));
}

TEST(Embedding, CriticallyDampedScalar) {
  const auto ev = sorted(pencil_eigenvalues(embed_first_order(scalar_rom(1, 2, 1))));
  ASSERT_EQ(ev.size(), 2u);
  for (auto l : ev) EXPECT_NEAR(std::abs(l - Complex(-1, 0)), 0.0, 1e-7);
}

TEST(Embedding, UndampedScalar) {
  const auto ev = sorted(pencil_eigenvalues(embed_first_order(scalar_rom(1, 0, 1))));
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(std::abs(ev[0] - Complex(0, -1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ev[1] - Complex(0, 1)), 0.0, 1e-12);
}

TEST(Embedding, MatchesCompanionLinearization) {
  ReducedSecondOrderModel rom;
  rom.Mr = (Matrix(3, 3) << 2, 0.1, 0, 0.1, 1.5, 0.2, 0, 0.2, 1).finished();
  rom.Dr = (Matrix(3, 3) << 0.4, 0.1, 0, 0.1, 0.3, 0, 0, 0, 0.5).finished();
  rom.Kr = (Matrix(3, 3) << 3, -1, 0, -1, 3, -1, 0, -1, 2).finished();
  rom.Fr = Matrix::Ones(3, 1);
  rom.Lr = Matrix::Ones(1, 3);
  const auto ev = sorted(pencil_eigenvalues(embed_first_order(rom)));

  // Independent oracle: standard companion matrix of M^-1 (λ² M + λ D + K).
  const Matrix Minv = rom.Mr.inverse();
  Matrix comp = Matrix::Zero(6, 6);
  comp.topRightCorner(3, 3).setIdentity();
  comp.bottomLeftCorner(3, 3) = -Minv * rom.Kr;
  comp.bottomRightCorner(3, 3) = -Minv * rom.Dr;
  const auto ref = sorted(Eigen::EigenSolver<Matrix>(comp).eigenvalues());
  ASSERT_EQ(ev.size(), ref.size());
  for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_LT(std::abs(ev[i] - ref[i]), 1e-10);
  for (auto l : ev) EXPECT_LT(l.real(), 0.0);
}

TEST(Embedding, SingularMassRejected) {
  EXPECT_THROW(embed_first_order(scalar_rom(0, 1, 1)), Error);
}

}  // namespace
}  // namespace somor
