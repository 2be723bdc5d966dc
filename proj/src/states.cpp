#include "corrlab/states.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "corrlab/error.hpp"

namespace corrlab {

OperatorBasis make_basis(int d) {
  if (d < 2) throw ValidationError("make_basis: dimension must be >= 2");
  OperatorBasis basis;
  basis.d = d;
  const double rescale = std::sqrt(d / 2.0);
  const Complex i1(0.0, 1.0);

  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = m(k, j) = rescale;
      basis.generators.push_back(std::move(m));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = -i1 * rescale;
      m(k, j) = i1 * rescale;
      basis.generators.push_back(std::move(m));
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0))) * rescale;
    for (int j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -l * norm;
    basis.generators.push_back(std::move(m));
  }
  return basis;
}

const OperatorBasis& basis_for(int d) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const OperatorBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<const OperatorBasis>(make_basis(d));
  return *slot;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

BlochDecomposition BlochDecomposition::zero(int d_A) {
  if (d_A < 2) throw ValidationError("BlochDecomposition: d_A must be >= 2");
  BlochDecomposition b;
  b.d_A = d_A;
  b.r_A = RealVector::Zero(d_A * d_A - 1);
  b.r_B = Vec3::Zero();
  b.C = RealMatrix::Zero(d_A * d_A - 1, 3);
  return b;
}

void BlochDecomposition::validate(double slack) const {
  if (d_A < 2) throw ValidationError("Bloch decomposition: d_A must be >= 2");
  const int D = dim_A();
  if (r_A.size() != D) {
    throw ValidationError("Bloch decomposition: r_A must have " +
                          std::to_string(D) + " components");
  }
  if (C.rows() != D || C.cols() != 3) {
    throw ValidationError("Bloch decomposition: C must be " + std::to_string(D) +
                          " x 3");
  }
  if (r_B.norm() > 1.0 + slack) {
    throw ValidationError("Bloch decomposition: |r_B| exceeds 1");
  }
  if (r_A.squaredNorm() > (d_A - 1) + slack) {
    throw ValidationError("Bloch decomposition: |r_A|^2 exceeds d_A - 1");
  }
}

DensityMatrix bloch_to_matrix(const RealVector& r, int d) {
  const OperatorBasis& basis = basis_for(d);
  if (r.size() != basis.size()) {
    throw ValidationError("bloch_to_matrix: Bloch vector has wrong length");
  }
  DensityMatrix m = DensityMatrix::Identity(d, d);
  for (int mu = 0; mu < basis.size(); ++mu) m += r(mu) * basis.generators[mu];
  return m / static_cast<double>(d);
}

BlochDecomposition decompose(const DensityMatrix& rho, int d_A, double herm_tol) {
  if (d_A < 2 || rho.rows() != 2 * d_A || rho.cols() != 2 * d_A) {
    throw ValidationError("decompose: expected a " + std::to_string(2 * d_A) +
                          "-dimensional square matrix");
  }
  if (hermiticity_defect(rho) > herm_tol) {
    throw ValidationError("decompose: matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > herm_tol) {
    throw ValidationError("decompose: matrix does not have unit trace");
  }
  const OperatorBasis& ba = basis_for(d_A);
  const OperatorBasis& bb = basis_for(2);
  BlochDecomposition b = BlochDecomposition::zero(d_A);

  const DensityMatrix rho_a = partial_trace_B(rho, d_A);
  const DensityMatrix rho_b = partial_trace_A(rho, d_A);
  for (int mu = 0; mu < ba.size(); ++mu) {
    b.r_A(mu) = (rho_a * ba.generators[mu]).trace().real();
  }
  for (int nu = 0; nu < 3; ++nu) {
    b.r_B(nu) = (rho_b * bb.generators[nu]).trace().real();
  }
  for (int mu = 0; mu < ba.size(); ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      const ComplexMatrix op = kron(ba.generators[mu], bb.generators[nu]);
      b.C(mu, nu) = (rho * op).trace().real() - b.r_A(mu) * b.r_B(nu);
    }
  }
  return b;
}

DensityMatrix reconstruct(const BlochDecomposition& b) {
  b.validate();
  const OperatorBasis& ba = basis_for(b.d_A);
  const OperatorBasis& bb = basis_for(2);
  DensityMatrix rho =
      kron(bloch_to_matrix(b.r_A, b.d_A), bloch_to_matrix(b.r_B, 2));
  const double scale = 1.0 / (2.0 * b.d_A);
  for (int mu = 0; mu < ba.size(); ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      if (b.C(mu, nu) == 0.0) continue;
      rho += (scale * b.C(mu, nu)) * kron(ba.generators[mu], bb.generators[nu]);
    }
  }
  return rho;
}

DensityMatrix partial_trace_B(const DensityMatrix& rho, int d_A) {
  DensityMatrix out = DensityMatrix::Zero(d_A, d_A);
  for (int i = 0; i < d_A; ++i) {
    for (int j = 0; j < d_A; ++j) {
      out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    }
  }
  return out;
}

DensityMatrix partial_trace_A(const DensityMatrix& rho, int d_A) {
  DensityMatrix out = DensityMatrix::Zero(2, 2);
  for (int i = 0; i < d_A; ++i) {
    out += rho.block(2 * i, 2 * i, 2, 2);
  }
  return out;
}

PositivityCheck check_positive(const DensityMatrix& rho, double tol) {
  const HermitianEigen e = hermitian_eigen(rho);
  return {e.values(0) >= -tol, e.values(0)};
}

void require_physical(const BlochDecomposition& b, double tol) {
  const PositivityCheck pc = check_positive(reconstruct(b), tol);
  if (!pc.positive) {
    throw InvalidStateError("state is not positive (min eigenvalue " +
                            std::to_string(pc.min_eigenvalue) + ")");
  }
}

bool XStateParams::is_positive(double tol) const {
  const double pp = p_plus(), pm = p_minus(), qp = q_plus(), qm = q_minus();
  if (pp < -tol || pm < -tol || qp < -tol || qm < -tol) return false;
  const double amax = std::sqrt(std::max(0.0, pp) * std::max(0.0, pm));
  const double bmax = std::sqrt(std::max(0.0, qp) * std::max(0.0, qm));
  return std::abs(alpha_minus()) <= amax + tol &&
         std::abs(alpha_plus()) <= bmax + tol;
}

BlochDecomposition x_state(const XStateParams& p) {
  if (!p.is_positive()) {
    throw InvalidStateError("x_state: parameters violate positivity");
  }
  BlochDecomposition b = BlochDecomposition::zero(2);
  b.r_A(2) = p.r_A;
  b.r_B(2) = p.r_B;
  b.C(0, 0) = p.J_x;
  b.C(1, 1) = p.J_y;
  b.C(2, 2) = p.J_z - p.r_A * p.r_B;
  return b;
}

BlochDecomposition schmidt_pure(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("schmidt_pure: p must lie in [0, 1]");
  }
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = std::sqrt(p);
  psi(3) = std::sqrt(1.0 - p);
  return decompose(psi * psi.adjoint(), 2);
}

BlochDecomposition werner(double x) {
  BlochDecomposition b = BlochDecomposition::zero(2);
  b.C(0, 0) = x;
  b.C(1, 1) = -x;
  b.C(2, 2) = x;
  return b;
}

}  // namespace corrlab
