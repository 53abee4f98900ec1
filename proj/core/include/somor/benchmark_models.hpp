#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

#include "somor/system.hpp"

namespace somor {

/// Damped spring-mass chain with holonomic constraints (one input, three
/// outputs). M = mass I, K = stiffness tridiag(-1, 2, -1),
/// D = (damping / stiffness) K + 1e-2 M. Constraint j ties coordinate
/// j*s to coordinate j*s + s/2 with s = n1 / n2.
struct DsmsParams {
  Index n1 = 2000;
  Index n2 = 200;
  double mass = 100.0;
  double stiffness = 2.0;
  double damping = 5.0;
  std::uint64_t seed = 0;
};

/// Three chains of g masses each, coupled to one common end mass
/// (n1 = 3g + 1), one input and one output.
struct TcomParams {
  Index g = 50;
  Index n2 = 50;
  double masses[3] = {1.0, 2.0, 3.0};
  double common_mass = 10.0;
  double stiffness[3] = {10.0, 20.0, 1.0};
  double common_stiffness = 50.0;
  double alpha = 0.2;   // Rayleigh mass coefficient
  double beta = 0.2;    // Rayleigh stiffness coefficient
  std::uint64_t seed = 0;
};

/// Random stable test instance: banded SPD M, D, K, a random full-row-rank
/// sparse G, dense random F and L. Deterministic per seed.
struct RandomSystemParams {
  Index n1 = 50;
  Index n2 = 5;
  Index m = 2;
  Index q = 2;
  std::uint64_t seed = 0;
};

/// Random stable dense first-order system with E = I: A = Q (-diag(d) + N) Q^T
/// with d > 0, a small strictly upper triangular N and a random orthogonal Q,
/// so every eigenvalue is -d_i. Dense normal B and C.
struct RandomFirstOrderParams {
  Index n = 20;
  Index m = 2;
  Index q = 2;
  std::uint64_t seed = 0;
};

/// Throws kParameter on invalid parameters.
SecondOrderIndex3System gen_dsms(const DsmsParams& p);
SecondOrderIndex3System gen_tcom(const TcomParams& p);
SecondOrderIndex3System gen_random(const RandomSystemParams& p);
FirstOrderRealization gen_random_first_order(const RandomFirstOrderParams& p);

nlohmann::json to_json(const DsmsParams& p);
nlohmann::json to_json(const TcomParams& p);
nlohmann::json to_json(const RandomSystemParams& p);

}  // namespace somor
