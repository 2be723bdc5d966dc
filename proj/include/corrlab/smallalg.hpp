#pragma once

// Dense linear algebra on the small matrices that appear in qudit-qubit
// problems: Hermitian matrices up to 2*d_A square, real symmetric 3x3 and
// D_A x D_A matrices, D_A x 3 correlation tensors.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace corrlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

namespace tol {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kEigen = 1e-12;
inline constexpr double kPositiveDefinite = 1e-12;
inline constexpr double kDegenerate = 1e-9;
inline constexpr int kMaxSweeps = 100;
}  // namespace tol

/// Symmetric 3x3 matrix. Construction symmetrizes the input, so the stored
/// matrix is exactly symmetric.
class SymMatrix3 {
 public:
  SymMatrix3() : m_(Mat3::Zero()) {}
  explicit SymMatrix3(const Mat3& m) : m_(0.5 * (m + m.transpose())) {}
  SymMatrix3(double xx, double yy, double zz, double xy, double xz, double yz);

  static SymMatrix3 identity() { return SymMatrix3(Mat3::Identity()); }
  static SymMatrix3 diagonal(double x, double y, double z) {
    return SymMatrix3(x, y, z, 0.0, 0.0, 0.0);
  }

  const Mat3& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  Mat3 m_;
};

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors; // column i pairs with values[i]
};

struct SymmetricEigen {
  RealVector values;  // ascending
  RealMatrix vectors;
};

/// Maximum entry of |M - M^dagger|.
double hermiticity_defect(const ComplexMatrix& m);

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
/// Throws ValidationError when M is not Hermitian within `herm_tol`.
HermitianEigen hermitian_eigen(const ComplexMatrix& m,
                               double herm_tol = tol::kHermitian);

/// Real symmetric counterpart of hermitian_eigen.
SymmetricEigen symmetric_eigen(const RealMatrix& m,
                               double sym_tol = tol::kHermitian);

struct GeneralizedEigenpair {
  double value;
  Vec3 vector;  // unit Euclidean norm
};

struct GeneralizedEigen3 {
  std::vector<GeneralizedEigenpair> pairs;  // descending in value
  bool top_degenerate = false;              // gap(λ1, λ2) below tolerance
};

/// Solves A k = λ B k for symmetric A and positive definite B through the
/// symmetric reduction B^{-1/2} A B^{-1/2}.
///
/// Eigenvectors are sign-fixed so their first nonzero component is positive.
/// When the largest eigenvalue is degenerate the returned top vector is the
/// lexicographically largest unit vector of that eigenspace.
///
/// Throws SingularWeightError when the smallest eigenvalue of B is at or
/// below `pd_tol`.
GeneralizedEigen3 generalized_sym_eigen3(const SymMatrix3& a,
                                         const SymMatrix3& b,
                                         double pd_tol = tol::kPositiveDefinite,
                                         double degenerate_gap = tol::kDegenerate);

struct TallSvd {
  RealMatrix u;  // D x 3, orthonormal columns
  Vec3 singular; // descending, non-negative
  Mat3 v;        // orthogonal
};

/// Thin SVD of a D x 3 real matrix (D >= 3) by one-sided Jacobi rotations.
/// Each right singular vector has its largest-magnitude component positive;
/// the paired left vector is flipped with it.
TallSvd svd_tall(const RealMatrix& c);

/// Unit vector of the span of `basis` columns that is lexicographically
/// largest, i.e. maximizes the first coordinate, then the second, ...
RealVector lexicographic_max_unit(const RealMatrix& basis);

/// Flips v so that its first component exceeding `eps` in magnitude is
/// positive.
void fix_sign_first_nonzero(Eigen::Ref<RealVector> v, double eps = 1e-10);

}  // namespace corrlab
