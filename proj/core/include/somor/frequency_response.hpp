#pragma once

#include <iosfwd>
#include <vector>

#include "somor/projection.hpp"
#include "somor/system.hpp"
#include "somor/types.hpp"

namespace somor {

struct FrequencyGrid {
  std::vector<double> omegas;  // rad/s, strictly increasing, positive

  /// n log-spaced points from lo to hi inclusive.
  static FrequencyGrid logspace(double lo, double hi, std::size_t n = 200);
  std::size_t size() const { return omegas.size(); }
};

/// T(i w) per grid point. Entries where the evaluation hit a pole are marked
/// invalid and hold an empty matrix.
struct FrequencyResponseTable {
  std::vector<double> omegas;
  std::vector<ComplexMatrix> values;
  std::vector<double> sigma_max;
  std::vector<bool> valid;

  std::size_t size() const { return omegas.size(); }
};

/// Largest singular value of a small dense block.
double sigma_max(const ComplexMatrix& t);

/// L x where x solves the right saddle system at s with right-hand sides F.
ComplexMatrix full_transfer(const SecondOrderIndex3System& sys, Complex s);

/// Lr (s^2 Mr + s Dr + Kr)^-1 Fr.
ComplexMatrix reduced_transfer(const ReducedSecondOrderModel& rom, Complex s);

/// C (s E - A)^-1 B.
ComplexMatrix first_order_transfer(const FirstOrderRealization& sys, Complex s);

/// One augmented factorization per frequency, m right-hand sides each.
FrequencyResponseTable full_response(const SecondOrderIndex3System& sys,
                                     const FrequencyGrid& grid, int workers = 0);
FrequencyResponseTable reduced_response(const ReducedSecondOrderModel& rom,
                                        const FrequencyGrid& grid);
FrequencyResponseTable first_order_response(const FirstOrderRealization& sys,
                                            const FrequencyGrid& grid);
FrequencyResponseTable projected_response(const ProjectedSystem& psys,
                                          const FrequencyGrid& grid);

/// absolute = sigma_max(T - Tr), relative = absolute / sigma_max(T).
/// relative_defined is false where sigma_max(T) == 0 or either entry is
/// invalid; absolute is NaN where either entry is invalid.
struct ErrorCurves {
  std::vector<double> omegas;
  std::vector<double> absolute;
  std::vector<double> relative;
  std::vector<bool> relative_defined;

  /// Largest defined relative error (0 when none is defined).
  double max_relative() const;
};

/// Throws kParameter unless both tables share the same grid.
ErrorCurves error_curves(const FrequencyResponseTable& full,
                         const FrequencyResponseTable& reduced);

/// CSV with header `omega,sigma_full,sigma_reduced,abs_err,rel_err`, one row
/// per grid point, 17 significant digits. Either table may be null; missing
/// or undefined entries are written as empty fields.
void write_response_csv(std::ostream& out, const FrequencyResponseTable* full,
                        const FrequencyResponseTable* reduced);

/// Per-channel magnitudes |T_ij(i w)|: columns omega, full_<i>_<j>,
/// reduced_<i>_<j>.
void write_channel_csv(std::ostream& out, const FrequencyResponseTable* full,
                       const FrequencyResponseTable* reduced);

}  // namespace somor
