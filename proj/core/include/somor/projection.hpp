#pragma once

#include "somor/system.hpp"
#include "somor/types.hpp"

namespace somor {

/// Default largest n1 for which the dense projector may be formed.
inline constexpr Index kDefaultDenseCap = 2000;

/// Dense hidden-manifold projector P = I - G^T (G M^-1 G^T)^-1 G M^-1.
/// Only meant for verification at desk scale.
struct Projector {
  Matrix P;
  Index rank = 0;  // n1 - n2
};

/// Full-rank factorization P = Psi_l Psi_r^T with Psi_l^T Psi_r = I.
struct ProjectorSplit {
  Matrix Psi_l;
  Matrix Psi_r;
};

/// Standard second-order system on Null(G) in the coordinates x = Psi_r xt.
struct ProjectedSystem {
  Matrix Mt;
  Matrix Dt;
  Matrix Kt;
  Matrix Ft;
  Matrix Lt;

  Index order() const { return Mt.rows(); }
};

/// Throws kCapExceeded when n1 > cap, kConstraintDegeneracy when
/// G M^-1 G^T is singular, kFactorization when M is.
Projector build_projector(const SecondOrderIndex3System& sys,
                          Index cap = kDefaultDenseCap);

/// Thin SVD P = U S V^T truncated at singular values > 1e-10 * s_max:
/// Psi_l = U_k S_k, Psi_r = V_k. Throws kRank unless k == P.rank.
ProjectorSplit split_projector(const Projector& projector);

/// Mt = Psi_r^T M Psi_r (likewise D, K), Ft = Psi_r^T F, Lt = L Psi_r.
ProjectedSystem project_system(const SecondOrderIndex3System& sys,
                               const ProjectorSplit& split,
                               Index cap = kDefaultDenseCap);

/// The projected system as an unconstrained second-order model.
ReducedSecondOrderModel as_second_order(const ProjectedSystem& psys);

/// Lt (s^2 Mt + s Dt + Kt)^-1 Ft. Throws kPole if the resolvent is singular.
ComplexMatrix projected_transfer(const ProjectedSystem& psys, Complex s);

/// Relative residuals of the projector identities, each normalized as
/// ||P P - P|| / ||P||, ||P M - M P^T|| / (||P|| ||M||), ||P G^T|| / (||P|| ||G||).
struct ProjectorResiduals {
  double idempotency = 0.0;
  double mass_symmetry = 0.0;
  double null_space = 0.0;
};
ProjectorResiduals projector_residuals(const SecondOrderIndex3System& sys,
                                       const Projector& projector);

/// ||Psi_l Psi_r^T - P|| / ||P|| and ||Psi_l^T Psi_r - I||.
struct SplitResiduals {
  double factorization = 0.0;
  double biorthogonality = 0.0;
};
SplitResiduals split_residuals(const Projector& projector,
                               const ProjectorSplit& split);

/// Orthonormal basis of Null(G), n1 x (n1 - n2), from a dense SVD of G.
Matrix null_space_basis(const SparseMatrix& G);

}  // namespace somor
