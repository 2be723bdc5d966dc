#pragma once

// Qudit-qubit states in Fano-Bloch form.
//
// A state on C^{d_A} (x) C^2 is stored as (r_A, r_B, C):
//   rho = rho_A (x) rho_B + 1/(2 d_A) sum_{mu,nu} C_{mu nu} sigma_{A mu} (x) sigma_{B nu}
// with rho_A = (I + r_A . sigma_A)/d_A and rho_B = (I + r_B . sigma_B)/2.
// Generators satisfy Tr sigma_mu = 0 and Tr sigma_mu sigma_mu' = d delta_{mu mu'}.
// The composite basis index is i_A * 2 + i_B.

#include <vector>

#include "corrlab/smallalg.hpp"

namespace corrlab {

using DensityMatrix = ComplexMatrix;

struct OperatorBasis {
  int d = 0;
  std::vector<ComplexMatrix> generators;  // d*d - 1 entries

  int size() const { return static_cast<int>(generators.size()); }
};

/// Generalized Gell-Mann generators rescaled to Tr sigma_mu sigma_mu' = d delta.
/// Order: symmetric pairs (j<k), antisymmetric pairs (j<k), diagonal. For
/// d = 2 this is (sigma_x, sigma_y, sigma_z).
OperatorBasis make_basis(int d);

/// Cached basis for dimension d; thread-safe.
const OperatorBasis& basis_for(int d);

struct BlochDecomposition {
  int d_A = 2;
  RealVector r_A;  // D_A = d_A^2 - 1 components
  Vec3 r_B = Vec3::Zero();
  RealMatrix C;    // D_A x 3

  static BlochDecomposition zero(int d_A);

  int dim_A() const { return d_A * d_A - 1; }

  /// Throws ValidationError on shape mismatch or when |r_B| > 1 or
  /// |r_A|^2 > d_A - 1 beyond `slack`.
  void validate(double slack = 1e-9) const;
};

struct PositivityCheck {
  bool positive = false;
  double min_eigenvalue = 0.0;
};

inline constexpr double kPositivityTol = 1e-10;

BlochDecomposition decompose(const DensityMatrix& rho, int d_A,
                             double herm_tol = tol::kHermitian);
DensityMatrix reconstruct(const BlochDecomposition& b);

PositivityCheck check_positive(const DensityMatrix& rho,
                               double tol = kPositivityTol);

/// Throws InvalidStateError unless `b` reconstructs to a positive state.
void require_physical(const BlochDecomposition& b, double tol = kPositivityTol);

DensityMatrix partial_trace_B(const DensityMatrix& rho, int d_A);
DensityMatrix partial_trace_A(const DensityMatrix& rho, int d_A);

/// (I + r . sigma)/d for a Bloch vector over basis_for(d).
DensityMatrix bloch_to_matrix(const RealVector& r, int d);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Two-qubit X state
///   rho = 1/4 (I + r_A s_z (x) I + r_B I (x) s_z + sum_mu J_mu s_mu (x) s_mu).
struct XStateParams {
  double r_A = 0.0;
  double r_B = 0.0;
  double J_x = 0.0;
  double J_y = 0.0;
  double J_z = 0.0;

  double p_plus() const { return (1.0 + (r_A + r_B) + J_z) / 4.0; }
  double p_minus() const { return (1.0 - (r_A + r_B) + J_z) / 4.0; }
  double q_plus() const { return (1.0 + (r_A - r_B) - J_z) / 4.0; }
  double q_minus() const { return (1.0 - (r_A - r_B) - J_z) / 4.0; }
  double alpha_plus() const { return (J_x + J_y) / 4.0; }
  double alpha_minus() const { return (J_x - J_y) / 4.0; }

  bool is_positive(double tol = 1e-12) const;
};

/// Throws InvalidStateError when the positivity conditions fail.
BlochDecomposition x_state(const XStateParams& p);

/// sqrt(p)|00> + sqrt(1-p)|11>.
BlochDecomposition schmidt_pure(double p);

/// r_A = r_B = 0, C = diag(x, -x, x).
BlochDecomposition werner(double x);

}  // namespace corrlab
