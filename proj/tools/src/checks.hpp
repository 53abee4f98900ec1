#pragma once

#include <string>
#include <vector>

#include "somor/system.hpp"

namespace somor::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured residual or error
  double threshold = 0.0;  // pass when value <= threshold
  std::string detail;
};

using CheckList = std::vector<CheckResult>;

/// Projector identities and the split invariants (dense, desk scale).
void check_projector(const SecondOrderIndex3System& sys, const std::string& label, CheckList& out);

/// Saddle solves against the lifted projected solve, plus the constraint
/// residual of the saddle solution, at a few shifts.
void check_saddle_equivalence(const SecondOrderIndex3System& sys, const std::string& label,
                              CheckList& out);

/// Saddle-based T(i w) against the projected transfer function.
void check_realizations(const SecondOrderIndex3System& sys, const std::string& label,
                        std::size_t points, CheckList& out);

/// Interpolation residuals after each of the first `builds` basis builds.
void check_interpolation(const SecondOrderIndex3System& sys, Index r, int builds,
                         const std::string& label, CheckList& out);

/// Lyapunov residuals and the balanced truncation error bound on a random
/// stable first-order system of order n reduced to k.
void check_balanced_truncation(Index n, Index k, std::uint64_t seed, const std::string& label,
                               CheckList& out);

}  // namespace somor::cli
