#pragma once

// Local measurements on the qubit B and the resulting conditional entropies
// of the qudit A.

#include <vector>

#include "corrlab/entropy.hpp"
#include "corrlab/states.hpp"

namespace corrlab {

/// Bloch direction of the projector pair (I +- k . sigma_B)/2.
class ProjectiveDirection {
 public:
  /// Throws ValidationError unless |k| = 1 within 1e-12.
  explicit ProjectiveDirection(const Vec3& k);
  /// Normalizes k; throws ValidationError for a zero vector.
  static ProjectiveDirection normalized(const Vec3& k);

  const Vec3& vector() const { return k_; }
  ProjectiveDirection flipped() const { return ProjectiveDirection(-k_); }

 private:
  Vec3 k_;
};

struct PovmElement {
  double weight;  // r_k > 0
  Vec3 direction; // unit
};

/// Rank-one POVM {r_k (I + k . sigma_B)/2}; sum r_k = 2 and sum r_k k = 0.
class RankOnePovm {
 public:
  inline static constexpr double kIdentityTol = 1e-10;

  /// Throws InvalidPovmError when the elements do not resolve the identity.
  explicit RankOnePovm(std::vector<PovmElement> elements,
                       double tol = kIdentityTol);

  /// {(1, k), (1, -k)}.
  static RankOnePovm projective(const ProjectiveDirection& k);

  const std::vector<PovmElement>& elements() const { return elements_; }

 private:
  std::vector<PovmElement> elements_;
};

struct PostMeasurement {
  RealVector r_A;      // Bloch vector of the conditional state of A
  double probability;  // (1 +- r_B . k)/2
};

/// Outcomes whose probability is at or below this count as impossible.
inline constexpr double kZeroProbability = 1e-15;

/// r_A +- C k / (1 +- r_B . k). Throws UndefinedConditionalError when the
/// requested outcome has zero probability.
PostMeasurement post_measurement(const BlochDecomposition& b,
                                 const ProjectiveDirection& k, int sign);

/// S_f(rho_A) from the Bloch vector.
double marginal_entropy(const BlochDecomposition& b, const EntropicForm& f);

/// sum_{nu = +-1} p_{nu k} S_f(rho_{A/nu k}); impossible outcomes contribute 0.
double conditional_entropy(const BlochDecomposition& b, const ProjectiveDirection& k,
                           const EntropicForm& f);

/// sum_k r_k p_k S_f(rho_{A/k}) with p_k = (1 + r_B . k)/2.
double povm_conditional_entropy(const BlochDecomposition& b, const RankOnePovm& m,
                                const EntropicForm& f);

/// S_f(A) - S_f(A|B_k). For the quadratic entropy this is the closed form
/// (2/d_A) k^T C^T C k / (k^T N_B k).
double entropy_decrease(const BlochDecomposition& b, const ProjectiveDirection& k,
                        const EntropicForm& f);

/// Outcome probability vanishes for some direction (|r_B| = 1).
bool is_boundary(const BlochDecomposition& b);

/// N_B = I - r_B r_B^T.
Mat3 weight_matrix(const Vec3& r_B);

/// Two-qubit only: the Delta >= 0 solving h_f(|r_A| + Delta) = S_f(A|B_k),
/// found by bisection.
double measurement_equivalent(const BlochDecomposition& b,
                              const ProjectiveDirection& k, const EntropicForm& f);

/// Weak-correlation estimate of measurement_equivalent:
///   |r_A| > 0: k^T C^T Lambda_f C k / (|h_f'(r_A)| k^T N_B k)
///   r_A = 0:   |C k| / sqrt(1 - (r_B . k)^2)
double measurement_equivalent_estimate(const BlochDecomposition& b,
                                       const ProjectiveDirection& k,
                                       const EntropicForm& f);

}  // namespace corrlab
