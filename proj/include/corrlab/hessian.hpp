#pragma once

// Scaled Hessian of S_f at rho_A, the second-order coefficient of the
// conditional entropy in the correlation tensor:
//   S_f(A|B_k) ~ S_f(rho_A) - (2/d_A) k^T C^T Lambda_f C k / (k^T N_B k).

#include "corrlab/entropy.hpp"
#include "corrlab/smallalg.hpp"
#include "corrlab/states.hpp"

namespace corrlab {

struct HessianMatrix {
  RealMatrix lambda;  // symmetric positive definite
};

/// Spectra closer than this use the confluent limit R_ij = -f''((p_i+p_j)/2).
inline constexpr double kConfluentGap = 1e-8;
/// Below this |r_A| the two-qubit closed form switches to its r -> 0 limit.
inline constexpr double kSmallBloch = 1e-8;

/// [Lambda]_{mu mu'} = 1/(4 d_A) sum_ij R_ij <i|s_mu|j><j|s_mu'|i>, with
/// R_ij = (f'(p_i) - f'(p_j)) / (p_j - p_i) off the diagonal and -f''(p_i) on it.
/// Throws ApproximationInvalidError when rho_A is rank deficient and f'' is
/// singular at zero.
HessianMatrix hessian_general(const DensityMatrix& rho_A, const OperatorBasis& basis,
                              const EntropicForm& f);

/// Same as hessian_general for the state (I + r_A . sigma)/d_A.
HessianMatrix hessian_for_bloch(const RealVector& r_A, int d_A, const EntropicForm& f);

/// Two-qubit closed form
///   Lambda_f(r_A) = -(h_f'(r)/2r) [I + (eta_f(r) - 1) r_A r_A^T / r^2],
/// with the limit (1/2)|h_f''(0)| I for |r_A| below kSmallBloch.
HessianMatrix hessian_two_qubit(const Vec3& r_A, const EntropicForm& f);

}  // namespace corrlab
