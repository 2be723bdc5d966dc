#include "corrlab/smallalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "corrlab/error.hpp"

namespace corrlab {

namespace {

double conj_of(double x) { return x; }
Complex conj_of(Complex x) { return std::conj(x); }

template <typename Matrix>
double off_diagonal_norm(const Matrix& m) {
  double s = 0.0;
  const auto n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) s += std::norm(m(i, j));
    }
  }
  return std::sqrt(s);
}

// Cyclic Jacobi on a self-adjoint matrix. Each pivot (p, q) is annihilated by
// V = diag(1, conj(phase)) * [[c, s], [-s, c]] where phase = a_pq / |a_pq|.
template <typename Scalar>
void jacobi_diagonalize(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& q) {
  const Eigen::Index n = a.rows();
  q.setIdentity(n, n);
  const double scale = std::max(1.0, a.norm());
  for (int sweep = 0; sweep < tol::kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= tol::kEigen * scale) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index r = p + 1; r < n; ++r) {
        const Scalar apq = a(p, r);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Scalar phase = apq / mag;
        const double app = std::real(a(p, p));
        const double arr = std::real(a(r, r));
        const double tau = (arr - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Scalar ph_c = conj_of(phase);

        // a <- a V (columns), then a <- V^dagger a (rows)
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akr = a(k, r);
          a(k, p) = c * akp - s * ph_c * akr;
          a(k, r) = s * akp + c * ph_c * akr;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar ark = a(r, k);
          a(p, k) = c * apk - s * phase * ark;
          a(r, k) = s * apk + c * phase * ark;
        }
        a(p, r) = Scalar(0);
        a(r, p) = Scalar(0);
        a(p, p) = std::real(a(p, p));
        a(r, r) = std::real(a(r, r));
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar qkp = q(k, p);
          const Scalar qkr = q(k, r);
          q(k, p) = c * qkp - s * ph_c * qkr;
          q(k, r) = s * qkp + c * ph_c * qkr;
        }
      }
    }
  }
}

template <typename Scalar>
std::pair<RealVector, Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>
sorted_eigen(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat q;
  jacobi_diagonalize(a, q);
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });
  RealVector values(n);
  Mat vectors(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values(i) = std::real(a(order[i], order[i]));
    vectors.col(i) = q.col(order[i]);
  }
  return {values, vectors};
}

}  // namespace

SymMatrix3::SymMatrix3(double xx, double yy, double zz, double xy, double xz,
                       double yz) {
  m_ << xx, xy, xz, xy, yy, yz, xz, yz, zz;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m, double herm_tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw ValidationError("hermitian_eigen: matrix must be square and non-empty");
  }
  const double defect = hermiticity_defect(m);
  if (!(defect <= herm_tol)) {
    throw ValidationError("hermitian_eigen: matrix is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
  ComplexMatrix sym = 0.5 * (m + m.adjoint());
  auto [values, vectors] = sorted_eigen<Complex>(std::move(sym));
  return {std::move(values), std::move(vectors)};
}

SymmetricEigen symmetric_eigen(const RealMatrix& m, double sym_tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw ValidationError("symmetric_eigen: matrix must be square and non-empty");
  }
  const double defect = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (!(defect <= sym_tol)) {
    throw ValidationError("symmetric_eigen: matrix is not symmetric");
  }
  RealMatrix sym = 0.5 * (m + m.transpose());
  auto [values, vectors] = sorted_eigen<double>(std::move(sym));
  return {std::move(values), std::move(vectors)};
}

void fix_sign_first_nonzero(Eigen::Ref<RealVector> v, double eps) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > eps) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

RealVector lexicographic_max_unit(const RealMatrix& basis) {
  const Eigen::Index n = basis.rows();
  // orthonormalize the span first
  Eigen::HouseholderQR<RealMatrix> qr(basis);
  const RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, basis.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    RealVector proj = q * q.row(i).transpose();
    const double norm = proj.norm();
    if (norm > 1e-10) return proj / norm;
  }
  return q.col(0);
}

GeneralizedEigen3 generalized_sym_eigen3(const SymMatrix3& a, const SymMatrix3& b,
                                         double pd_tol, double degenerate_gap) {
  const SymmetricEigen be = symmetric_eigen(b.matrix());
  if (!(be.values(0) > pd_tol)) {
    throw SingularWeightError(
        "generalized_sym_eigen3: weight matrix is not positive definite");
  }
  const RealVector inv_sqrt = be.values.cwiseSqrt().cwiseInverse();
  const Mat3 b_inv_half =
      be.vectors * inv_sqrt.asDiagonal() * be.vectors.transpose();
  const Mat3 reduced = b_inv_half * a.matrix() * b_inv_half;
  const SymmetricEigen re = symmetric_eigen(reduced, 1e-6);

  GeneralizedEigen3 out;
  const double scale = std::max(1.0, std::abs(re.values(2)));
  out.top_degenerate = (re.values(2) - re.values(1)) < degenerate_gap * scale;

  for (int i = 2; i >= 0; --i) {
    Vec3 k = b_inv_half * re.vectors.col(i);
    k.normalize();
    fix_sign_first_nonzero(k);
    out.pairs.push_back({re.values(i), k});
  }

  if (out.top_degenerate) {
    // eigenspace of the top cluster, in k coordinates
    int count = 1;
    while (count < 3 &&
           (re.values(2) - re.values(2 - count)) < degenerate_gap * scale) {
      ++count;
    }
    RealMatrix span(3, count);
    for (int j = 0; j < count; ++j) span.col(j) = out.pairs[j].vector;
    out.pairs[0].vector = lexicographic_max_unit(span);
  }
  return out;
}

TallSvd svd_tall(const RealMatrix& c) {
  const Eigen::Index d = c.rows();
  if (c.cols() != 3 || d < 3) {
    throw ValidationError("svd_tall: expected a D x 3 matrix with D >= 3");
  }
  RealMatrix w = c;
  Mat3 v = Mat3::Identity();
  const double scale = std::max(1e-300, c.squaredNorm());
  for (int sweep = 0; sweep < tol::kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double alpha = w.col(p).squaredNorm();
        const double beta = w.col(q).squaredNorm();
        const double gamma = w.col(p).dot(w.col(q));
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) ||
            std::abs(gamma) <= 1e-30 * scale) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (Eigen::Index k = 0; k < d; ++k) {
          const double wp = w(k, p);
          const double wq = w(k, q);
          w(k, p) = cs * wp - sn * wq;
          w(k, q) = sn * wp + cs * wq;
        }
        for (int k = 0; k < 3; ++k) {
          const double vp = v(k, p);
          const double vq = v(k, q);
          v(k, p) = cs * vp - sn * vq;
          v(k, q) = sn * vp + cs * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::array<int, 3> order{0, 1, 2};
  Vec3 norms(w.col(0).norm(), w.col(1).norm(), w.col(2).norm());
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return norms(i) > norms(j); });

  TallSvd out;
  out.u = RealMatrix::Zero(d, 3);
  const double cutoff = 1e-14 * std::max(1.0, norms.maxCoeff());
  std::vector<int> missing;
  for (int i = 0; i < 3; ++i) {
    const int src = order[static_cast<size_t>(i)];
    out.singular(i) = norms(src);
    out.v.col(i) = v.col(src);
    if (norms(src) > cutoff) {
      out.u.col(i) = w.col(src) / norms(src);
    } else {
      out.singular(i) = 0.0;
      missing.push_back(i);
    }
  }
  // complete U with an orthonormal complement from the standard basis
  for (int i : missing) {
    for (Eigen::Index e = 0; e < d; ++e) {
      RealVector cand = RealVector::Unit(d, e);
      for (int j = 0; j < i; ++j) {
        cand -= out.u.col(j).dot(cand) * out.u.col(j);
      }
      const double nrm = cand.norm();
      if (nrm > 1e-6) {
        out.u.col(i) = cand / nrm;
        break;
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    Eigen::Index arg = 0;
    out.v.col(i).cwiseAbs().maxCoeff(&arg);
    if (out.v(arg, i) < 0.0) {
      out.v.col(i) = -out.v.col(i);
      out.u.col(i) = -out.u.col(i);
    }
  }
  return out;
}

}  // namespace corrlab
