#pragma once

// The correlation ellipsoid: the set of conditional Bloch vectors r_{A/k} of
// the qudit over all measurement directions k on the qubit.

#include <vector>

#include "corrlab/states.hpp"

namespace corrlab {

struct EllipsoidAxis {
  RealVector direction;  // unit D_A-vector
  double semi_axis;
};

struct CorrelationEllipsoid {
  RealVector center;                // r_A - C r_B / (1 - r_B^2)
  std::vector<EllipsoidAxis> axes;  // descending semi-axis
  int rank = 0;

  /// (x - c)^T (1 - r_B^2) (C N_B^{-1} C^T)^+ (x - c); equals 1 on the surface.
  double quadratic_form(const RealVector& x) const;
};

/// Eigenvalues below this fraction of the largest count as zero.
inline constexpr double kRankCutoff = 1e-12;

/// Throws ValidationError when |r_B| >= 1.
CorrelationEllipsoid correlation_ellipsoid(const BlochDecomposition& b);

/// n quasi-uniform unit vectors on the sphere (Fibonacci lattice).
std::vector<Vec3> fibonacci_sphere(int n);

/// n quasi-uniform unit vectors on the hemisphere z >= 0.
std::vector<Vec3> fibonacci_hemisphere(int n);

struct SurfacePoint {
  Vec3 k;
  int sign;     // outcome +1 or -1
  RealVector r; // r_{A/sign k}
};

/// Conditional Bloch vectors for both outcomes of n Fibonacci directions.
/// Zero-probability outcomes are omitted.
std::vector<SurfacePoint> sample_surface(const BlochDecomposition& b, int n);

}  // namespace corrlab
