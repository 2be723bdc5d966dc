#include "corrlab/hessian.hpp"

#include <cmath>

#include "corrlab/error.hpp"

namespace corrlab {

HessianMatrix hessian_general(const DensityMatrix& rho_A, const OperatorBasis& basis,
                              const EntropicForm& f) {
  const int d = basis.d;
  if (rho_A.rows() != d || rho_A.cols() != d) {
    throw ValidationError("hessian_general: dimension mismatch");
  }
  const HermitianEigen e = hermitian_eigen(rho_A);
  RealVector p = e.values;
  for (int i = 0; i < d; ++i) {
    if (p(i) < kSpectrumFloor) {
      if (!f.regular_at_zero()) {
        throw ApproximationInvalidError(
            "hessian: rho_A is rank deficient, no finite Hessian for entropy " +
            f.name());
      }
      p(i) = 0.0;
    }
  }

  RealMatrix r(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j || std::abs(p(i) - p(j)) < kConfluentGap) {
        r(i, j) = -f.d2f(0.5 * (p(i) + p(j)));
      } else {
        r(i, j) = (f.df(p(i)) - f.df(p(j))) / (p(j) - p(i));
      }
    }
  }

  // generators in the eigenbasis of rho_A
  const int n = basis.size();
  std::vector<ComplexMatrix> rotated;
  rotated.reserve(static_cast<size_t>(n));
  for (const auto& g : basis.generators) {
    rotated.push_back(e.vectors.adjoint() * g * e.vectors);
  }

  HessianMatrix h{RealMatrix::Zero(n, n)};
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu; nu < n; ++nu) {
      double acc = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          acc += r(i, j) * std::real(rotated[mu](i, j) * rotated[nu](j, i));
        }
      }
      h.lambda(mu, nu) = h.lambda(nu, mu) = acc / (4.0 * d);
    }
  }
  return h;
}

HessianMatrix hessian_for_bloch(const RealVector& r_A, int d_A, const EntropicForm& f) {
  return hessian_general(bloch_to_matrix(r_A, d_A), basis_for(d_A), f);
}

HessianMatrix hessian_two_qubit(const Vec3& r_A, const EntropicForm& f) {
  const double r = r_A.norm();
  if (r >= 1.0) {
    throw ApproximationInvalidError("hessian: |r_A| = 1, rho_A is pure");
  }
  if (r < kSmallBloch) {
    return {0.5 * std::abs(h_f_second(0.0, f)) * RealMatrix::Identity(3, 3)};
  }
  const double scale = -h_f_prime(r, f) / (2.0 * r);
  const double eta = eta_f(r, f);
  const Vec3 n = r_A / r;
  Mat3 m = Mat3::Identity() + (eta - 1.0) * n * n.transpose();
  return {scale * m};
}

}  // namespace corrlab
