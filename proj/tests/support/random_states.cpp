#include "random_states.hpp"

#include <cmath>

#include "corrlab/entropy.hpp"

namespace corrlab::testkit {

namespace {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(n(rng), n(rng));
  }
  return g;
}

}  // namespace

DensityMatrix random_density(int n, Rng& rng, int rank) {
  const ComplexMatrix g = ginibre(n, rank > 0 ? rank : n, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

ComplexMatrix haar_unitary(int n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0);
  }
  return q;
}

BlochDecomposition random_state(int d_A, Rng& rng) {
  return decompose(random_density(2 * d_A, rng), d_A);
}

Vec3 random_unit(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(n(rng), n(rng), n(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

BlochDecomposition scaled(const BlochDecomposition& b, double eps) {
  BlochDecomposition out = b;
  out.C *= eps;
  return out;
}

BlochDecomposition random_full_rank_base(int d_A, Rng& rng) {
  // Mixing with the maximally mixed state keeps every eigenvalue of rho_AB,
  // rho_A and rho_B away from zero. Convexity in C keeps eps C physical.
  const int n = 2 * d_A;
  const DensityMatrix rho = 0.7 * random_density(n, rng) +
                            0.3 * DensityMatrix::Identity(n, n) / static_cast<double>(n);
  return decompose(rho, d_A);
}

RankOnePovm random_povm(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::vector<ComplexMatrix> raw;
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < n; ++i) {
    raw.push_back(effect(2.0 * u(rng), random_unit(rng)));
    s += raw.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
  const ComplexMatrix s_inv_half = es.operatorInverseSqrt();
  std::vector<PovmElement> elems;
  double total = 0.0;
  for (const auto& e : raw) {
    const ComplexMatrix t = s_inv_half * e * s_inv_half;
    const double w = t.trace().real();
    const Vec3 k(std::real((t * make_basis(2).generators[0]).trace()) / w,
                 std::real((t * make_basis(2).generators[1]).trace()) / w,
                 std::real((t * make_basis(2).generators[2]).trace()) / w);
    elems.push_back({w, k.normalized()});
    total += w;
  }
  return RankOnePovm(elems);
}

DensityMatrix random_pure_two_qubit(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p = u(rng);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = std::sqrt(p);
  psi(3) = std::sqrt(1.0 - p);
  const ComplexMatrix local = kron(haar_unitary(2, rng), haar_unitary(2, rng));
  const Eigen::VectorXcd phi = local * psi;
  return phi * phi.adjoint();
}

ComplexMatrix effect(double weight, const Vec3& k) {
  const OperatorBasis& b = basis_for(2);
  ComplexMatrix e = ComplexMatrix::Identity(2, 2);
  for (int i = 0; i < 3; ++i) e += k(i) * b.generators[i];
  return 0.5 * weight * e;
}

double dense_conditional_entropy(const DensityMatrix& rho, int d_A,
                                 const std::vector<ComplexMatrix>& effects,
                                 const EntropicForm& f) {
  double s = 0.0;
  for (const auto& e : effects) {
    const ComplexMatrix m = partial_trace_B(
        rho * kron(ComplexMatrix::Identity(d_A, d_A), e), d_A);
    const double p = m.trace().real();
    if (p <= 1e-15) continue;
    ComplexMatrix cond = m / p;
    cond = 0.5 * (cond + cond.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(cond);
    std::vector<double> spec(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    s += p * entropy_of_spectrum(spec, f);
  }
  return s;
}

}  // namespace corrlab::testkit
