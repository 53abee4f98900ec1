#include <gtest/gtest.h>

#include "somor/error.hpp"
#include "somor/shifts.hpp"
#include "somor/system.hpp"

namespace somor {
namespace {

ReducedSecondOrderModel modal_rom(const Vector& omega, const Vector& zeta) {
  const Index r = omega.size();
  ReducedSecondOrderModel rom;
  rom.Mr = Matrix::Identity(r, r);
  rom.Dr = (2.0 * zeta.cwiseProduct(omega)).asDiagonal();
  rom.Kr = omega.cwiseAbs2().asDiagonal();
  rom.Fr = Matrix::Ones(r, 1);
  rom.Lr = Matrix::Ones(1, r);
  return rom;
}

TEST(InitShifts, SingleRealShift) {
  const auto s = init_shifts(1, 3, 2, {}, 7);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.alpha(0).imag(), 0.0);
  EXPECT_GT(s.alpha(0).real(), 0.0);
  EXPECT_EQ(s.b(0).imag().norm(), 0.0);
  EXPECT_EQ(s.c(0).imag().norm(), 0.0);
  EXPECT_NEAR(s.b(0).norm(), 1.0, 1e-15);
  EXPECT_NEAR(s.c(0).norm(), 1.0, 1e-15);
}

TEST(InitShifts, Deterministic) {
  const auto a = init_shifts(4, 2, 2, {}, 11);
  const auto b = init_shifts(4, 2, 2, {}, 11);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.alpha(i), b.alpha(i));
    EXPECT_EQ(a.b(i), b.b(i));
    EXPECT_EQ(a.c(i), b.c(i));
  }
  EXPECT_NE(init_shifts(4, 2, 2, {}, 12).alpha(0), a.alpha(0));
}

TEST(InitShifts, MagnitudesInsideBand) {
  const Band band{1e-2, 1.0};
  const auto s = init_shifts(30, 2, 2, band, 0);
  ASSERT_EQ(s.size(), 30u);
  EXPECT_TRUE(s.conjugate_closed());
  EXPECT_TRUE(s.right_half_plane());
  for (auto a : s.alphas()) {
    EXPECT_GE(std::abs(a), band.lo * (1 - 1e-12));
    EXPECT_LE(std::abs(a), band.hi * (1 + 1e-12));
  }
}

TEST(InitShifts, RejectsBadArguments) {
  EXPECT_THROW(init_shifts(0, 2, 2, {}, 0), Error);
  EXPECT_THROW(init_shifts(4, 2, 2, {1.0, 0.5}, 0), Error);
  EXPECT_THROW(init_shifts(4, 2, 2, {0.0, 1.0}, 0), Error);
}

TEST(ShiftSet, PairStoredWithConjugate) {
  ShiftSet s;
  ComplexVector b(1), c(1);
  b << Complex(0.6, 0.8);
  c << Complex(1, 0);
  s.add_pair(Complex(1, -2), b, c);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.alpha(0), Complex(1, 2));
  EXPECT_EQ(s.alpha(1), Complex(1, -2));
  EXPECT_EQ(s.partner(0), 1u);
  EXPECT_TRUE(s.conjugate_closed());
}

TEST(ShiftChange, ZeroForSameSetAndPositiveOtherwise) {
  const auto a = init_shifts(6, 2, 2, {}, 1);
  const auto b = init_shifts(6, 2, 2, {}, 2);
  EXPECT_EQ(shift_change(a, a), 0.0);
  EXPECT_GT(shift_change(a, b), 0.0);
  EXPECT_THROW(shift_change(a, init_shifts(4, 2, 2, {}, 1)), Error);
}

TEST(UpdateShifts, CriticallyDampedScalar) {
  ReducedSecondOrderModel rom;
  rom.Mr = Matrix::Ones(1, 1);
  rom.Dr = Matrix::Constant(1, 1, 2.0);
  rom.Kr = Matrix::Ones(1, 1);
  rom.Fr = Matrix::Ones(1, 1);
  rom.Lr = Matrix::Ones(1, 1);
  const auto s = update_shifts(rom, 1);
  ASSERT_EQ(s.size(), 1u);
  // Order-1 balanced truncation of 1/(s+1)^2 keeps the pole -(1 - 1/sqrt 2).
  EXPECT_NEAR(std::abs(s.alpha(0) - Complex(1 - std::sqrt(0.5), 0)), 0.0, 1e-10);
}

TEST(UpdateShifts, MirrorsRetainedPoles) {
  // The second mode has no input, so the retained poles are exactly the first mode's.
  Vector omega(2), zeta(2);
  omega << 0.5, 2.0;
  zeta << 0.05, 0.2;
  auto rom = modal_rom(omega, zeta);
  rom.Fr(1, 0) = 0.0;
  const Complex pole(-zeta(0) * omega(0), omega(0) * std::sqrt(1 - zeta(0) * zeta(0)));
  const auto s = update_shifts(rom, 2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.conjugate_closed(1e-12));
  EXPECT_TRUE(s.right_half_plane());
  const auto sorted = s.sorted_alphas();
  EXPECT_LT(std::abs(sorted[0] + pole), 1e-10) << sorted[0];
  EXPECT_LT(std::abs(sorted[1] + std::conj(pole)), 1e-10) << sorted[1];
}

TEST(UpdateShifts, KeepsInvariantsOnUnstableModel) {
  Vector omega(2), zeta(2);
  omega << 0.5, 1.5;
  zeta << 0.1, 0.2;
  auto rom = modal_rom(omega, zeta);
  rom.Dr(0, 0) = -0.1;
  const auto s = update_shifts(rom, 2);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.conjugate_closed(1e-12));
  EXPECT_TRUE(s.right_half_plane());
}

}  // namespace
}  // namespace somor
