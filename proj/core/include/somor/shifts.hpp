#pragma once

#include <cstdint>
#include <vector>

#include "somor/system.hpp"
#include "somor/types.hpp"

namespace somor {

/// Frequency band [lo, hi] in rad/s.
struct Band {
  double lo = 1e-2;
  double hi = 1.0;
};

/// Interpolation points with right (length m) and left (length q) tangential
/// directions. Non-real points are stored as adjacent pairs (a, conj(a)) with
/// the positive-imaginary member first and conjugated directions.
class ShiftSet {
 public:
  ShiftSet() = default;

  /// Appends a real shift; directions must be real-valued.
  void add_real(double alpha, const ComplexVector& b, const ComplexVector& c);
  /// Appends the pair (alpha, conj(alpha)); Im(alpha) > 0 is enforced by
  /// conjugating the triple if needed.
  void add_pair(Complex alpha, const ComplexVector& b, const ComplexVector& c);

  std::size_t size() const { return alphas_.size(); }
  bool empty() const { return alphas_.empty(); }

  Complex alpha(std::size_t i) const { return alphas_[i]; }
  const ComplexVector& b(std::size_t i) const { return b_[i]; }
  const ComplexVector& c(std::size_t i) const { return c_[i]; }
  const std::vector<Complex>& alphas() const { return alphas_; }

  /// Index of the conjugate partner of shift i, or i for a real shift.
  std::size_t partner(std::size_t i) const { return partner_[i]; }
  /// True for the first member of a pair and for real shifts.
  bool is_leader(std::size_t i) const { return partner_[i] >= i; }

  /// Multiplies shift i (and its partner) by `factor`.
  void scale_shift(std::size_t i, double factor);

  /// Conjugate closure with paired directions, checked to `tol`.
  bool conjugate_closed(double tol = 0.0) const;
  bool right_half_plane() const;

  /// Shifts sorted by (Re, Im) lexicographically.
  std::vector<Complex> sorted_alphas() const;

 private:
  std::vector<Complex> alphas_;
  std::vector<ComplexVector> b_;
  std::vector<ComplexVector> c_;
  std::vector<std::size_t> partner_;
};

/// r shifts with magnitudes log-uniform in `band`, placed as conjugate pairs
/// s (cos t +- i sin t) with t uniform in (0, pi/2); odd r adds one real shift.
/// Directions are random unit vectors. Deterministic per seed.
ShiftSet init_shifts(Index r, Index m, Index q, Band band, std::uint64_t seed);

/// ||sort(next) - sort(prev)|| / ||sort(prev)|| with (Re, Im) lexicographic sort.
double shift_change(const ShiftSet& next, const ShiftSet& prev);

/// Mirror-image update: embed rom to first order (order 2r), balance-truncate
/// to order r, and take a_i = -lambda_i with residue directions
/// b_i = B^T conj(y_i), c_i = C z_i of the truncated pencil. Points with
/// Re <= 0 are reflected; directions are normalized to unit length.
/// Throws kStability or kSingularReduced when the reduced pencil is unstable
/// or defective.
ShiftSet update_shifts(const ReducedSecondOrderModel& rom, Index r);

}  // namespace somor
