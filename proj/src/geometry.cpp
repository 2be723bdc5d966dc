#include "corrlab/geometry.hpp"

#include <cmath>
#include <numbers>

#include "corrlab/error.hpp"
#include "corrlab/measurement.hpp"

namespace corrlab {

double CorrelationEllipsoid::quadratic_form(const RealVector& x) const {
  const RealVector dx = x - center;
  double s = 0.0;
  for (const auto& axis : axes) {
    const double t = dx.dot(axis.direction) / axis.semi_axis;
    s += t * t;
  }
  return s;
}

CorrelationEllipsoid correlation_ellipsoid(const BlochDecomposition& b) {
  b.validate();
  const double rb2 = b.r_B.squaredNorm();
  if (rb2 >= 1.0 - 1e-12) {
    throw ValidationError("correlation_ellipsoid: |r_B| = 1, the qubit is pure");
  }
  const Mat3 n_inv = Mat3::Identity() + b.r_B * b.r_B.transpose() / (1.0 - rb2);
  const RealMatrix m = b.C * n_inv * b.C.transpose();

  CorrelationEllipsoid e;
  e.center = b.r_A - b.C * (b.r_B / (1.0 - rb2));

  const SymmetricEigen eig = symmetric_eigen(m, 1e-9);
  const Eigen::Index n = eig.values.size();
  const double top = eig.values(n - 1);
  if (top <= 0.0) return e;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const double lambda = eig.values(i);
    if (lambda <= kRankCutoff * top) break;
    RealVector dir = eig.vectors.col(i);
    fix_sign_first_nonzero(dir);
    e.axes.push_back({std::move(dir), std::sqrt(lambda / (1.0 - rb2))});
  }
  e.rank = static_cast<int>(e.axes.size());
  return e;
}

std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<size_t>(std::max(n, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return pts;
}

std::vector<Vec3> fibonacci_hemisphere(int n) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<size_t>(std::max(n, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (i + 0.5) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return pts;
}

std::vector<SurfacePoint> sample_surface(const BlochDecomposition& b, int n) {
  if (n < 1) throw ValidationError("sample_surface: n must be >= 1");
  std::vector<SurfacePoint> out;
  for (const Vec3& k : fibonacci_sphere(n)) {
    const ProjectiveDirection dir(k);
    for (int sign : {+1, -1}) {
      const double prob = 0.5 * (1.0 + sign * b.r_B.dot(k));
      if (!(prob > kZeroProbability)) continue;
      out.push_back({k, sign, post_measurement(b, dir, sign).r_A});
    }
  }
  return out;
}

}  // namespace corrlab
