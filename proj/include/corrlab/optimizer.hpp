#pragma once

// Projective measurement directions minimizing S_f(A|B_k).
//
// Three routes:
//  - minimize_quadratic: exact for the quadratic entropy, C^T C k = lambda N_B k.
//  - minimize_weak_correlation: second-order expansion for any S_f,
//    C^T Lambda_f(rho_A) C k = lambda N_B k.
//  - minimize_oracle: brute-force sphere search, the reference for both.

#include <string>

#include "corrlab/entropy.hpp"
#include "corrlab/hessian.hpp"
#include "corrlab/measurement.hpp"
#include "corrlab/states.hpp"

namespace corrlab {

enum class Method { ExactQuadratic, WeakCorrelation, Oracle };

std::string to_string(Method m);

struct OptimizationResult {
  Vec3 k_opt = Vec3::UnitZ();
  double lambda_max = 0.0;  // (d_A/2) * max_k Delta S_f
  double s_min = 0.0;
  Method method = Method::Oracle;
  bool degenerate = false;
};

/// Throws SingularWeightError when |r_B| = 1.
OptimizationResult minimize_quadratic(const BlochDecomposition& b,
                                      double degenerate_gap = tol::kDegenerate);

/// Propagates ApproximationInvalidError from the Hessian; SingularWeightError
/// when |r_B| = 1.
OptimizationResult minimize_weak_correlation(const BlochDecomposition& b,
                                             const EntropicForm& f,
                                             double degenerate_gap = tol::kDegenerate);

/// Weak-correlation estimate of Delta S_f along k:
///   (2/d_A) k^T C^T Lambda_f C k / (k^T N_B k).
double weak_entropy_decrease(const BlochDecomposition& b, const ProjectiveDirection& k,
                             const EntropicForm& f);

struct OracleOptions {
  int grid_n = 2000;            // points on the hemisphere
  double angular_tol = 1e-10;   // golden-section bracket width, radians
  int refine_iters = 40;        // outer iterations of the local search
  int candidates = 3;           // well-separated grid minima that get refined
};

/// Hemisphere Fibonacci grid, then golden-section line searches on a local
/// chart around the best cells. Deterministic for fixed inputs.
OptimizationResult minimize_oracle(const BlochDecomposition& b, const EntropicForm& f,
                                   const OracleOptions& options = {});

struct AlignedDecrease {
  double value = 0.0;      // Delta S_f along k
  double max_value = 0.0;  // max over the principal axes
  int max_axis = 2;        // 0 = x, 1 = y, 2 = z
  bool parallel = true;    // r_A and r_B on the same axis
};

/// Two-qubit states with diagonal C and r_A, r_B along coordinate axes:
/// closed-form weak-correlation Delta S_f,
///   |h_f'(r_A)|/(2 r_A) sum_mu w_mu C_mu^2 k_mu^2 / (1 - r_B^2 k_b^2),
/// with w_mu = eta_f(r_A) on the axis of r_A and 1 elsewhere.
/// Throws ValidationError when the alignment precondition fails (1e-10).
AlignedDecrease aligned_axes_decrease(const BlochDecomposition& b,
                                      const EntropicForm& f,
                                      const ProjectiveDirection& k);

}  // namespace corrlab
