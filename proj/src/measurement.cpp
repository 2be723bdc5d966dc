#include "corrlab/measurement.hpp"

#include <cmath>

#include "corrlab/error.hpp"
#include "corrlab/hessian.hpp"

namespace corrlab {

ProjectiveDirection::ProjectiveDirection(const Vec3& k) : k_(k) {
  if (!(std::abs(k.norm() - 1.0) <= 1e-12)) {
    throw ValidationError("projective direction must be a unit vector");
  }
}

ProjectiveDirection ProjectiveDirection::normalized(const Vec3& k) {
  const double n = k.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ValidationError("projective direction: zero or non-finite vector");
  }
  return ProjectiveDirection(k / n);
}

RankOnePovm::RankOnePovm(std::vector<PovmElement> elements, double tol)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidPovmError("POVM has no elements");
  double total = 0.0;
  Vec3 moment = Vec3::Zero();
  for (const auto& e : elements_) {
    if (!(e.weight > 0.0)) throw InvalidPovmError("POVM weights must be positive");
    if (std::abs(e.direction.norm() - 1.0) > 1e-12) {
      throw InvalidPovmError("POVM directions must be unit vectors");
    }
    total += e.weight;
    moment += e.weight * e.direction;
  }
  if (std::abs(total - 2.0) > tol || moment.norm() > tol) {
    throw InvalidPovmError("POVM elements do not sum to the identity");
  }
}

RankOnePovm RankOnePovm::projective(const ProjectiveDirection& k) {
  return RankOnePovm({{1.0, k.vector()}, {1.0, -k.vector()}});
}

Mat3 weight_matrix(const Vec3& r_B) {
  return Mat3::Identity() - r_B * r_B.transpose();
}

bool is_boundary(const BlochDecomposition& b) {
  return b.r_B.norm() >= 1.0 - 1e-12;
}

PostMeasurement post_measurement(const BlochDecomposition& b,
                                 const ProjectiveDirection& k, int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  const double denom = 1.0 + s * b.r_B.dot(k.vector());
  const double prob = 0.5 * denom;
  if (!(prob > kZeroProbability)) {
    throw UndefinedConditionalError(
        "post_measurement: outcome has zero probability");
  }
  return {b.r_A + (s / denom) * (b.C * k.vector()), prob};
}

double marginal_entropy(const BlochDecomposition& b, const EntropicForm& f) {
  return bloch_entropy(b.r_A, b.d_A, f);
}

namespace {

// Rank-one effect (I + k . sigma)/2 with outcome weight `weight`.
double weighted_branch(const BlochDecomposition& b, const Vec3& k, double weight,
                       const EntropicForm& f) {
  const double denom = 1.0 + b.r_B.dot(k);
  const double prob = 0.5 * denom;
  if (!(prob > kZeroProbability)) return 0.0;
  const RealVector r = b.r_A + (1.0 / denom) * (b.C * k);
  return weight * prob * bloch_entropy(r, b.d_A, f);
}

}  // namespace

double conditional_entropy(const BlochDecomposition& b, const ProjectiveDirection& k,
                           const EntropicForm& f) {
  return weighted_branch(b, k.vector(), 1.0, f) +
         weighted_branch(b, -k.vector(), 1.0, f);
}

double povm_conditional_entropy(const BlochDecomposition& b, const RankOnePovm& m,
                                const EntropicForm& f) {
  double s = 0.0;
  for (const auto& e : m.elements()) s += weighted_branch(b, e.direction, e.weight, f);
  return s;
}

double entropy_decrease(const BlochDecomposition& b, const ProjectiveDirection& k,
                        const EntropicForm& f) {
  if (f.kind() == EntropicForm::Kind::Quadratic) {
    const Vec3& kv = k.vector();
    const double denom = kv.dot(weight_matrix(b.r_B) * kv);
    if (denom > 1e-14) {
      return (2.0 / b.d_A) * (b.C * kv).squaredNorm() / denom;
    }
  }
  return std::max(0.0, marginal_entropy(b, f) - conditional_entropy(b, k, f));
}

double measurement_equivalent(const BlochDecomposition& b,
                              const ProjectiveDirection& k, const EntropicForm& f) {
  if (b.d_A != 2) throw ValidationError("measurement_equivalent: requires d_A = 2");
  const double r0 = std::min(b.r_A.norm(), 1.0);
  const double target = conditional_entropy(b, k, f);
  // h_f is strictly decreasing: h_f(r0 + lo) >= target >= h_f(r0 + hi)
  double lo = 0.0;
  double hi = 1.0 - r0;
  if (h_f(r0, f) <= target) return 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (h_f(r0 + mid, f) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double measurement_equivalent_estimate(const BlochDecomposition& b,
                                       const ProjectiveDirection& k,
                                       const EntropicForm& f) {
  if (b.d_A != 2) {
    throw ValidationError("measurement_equivalent_estimate: requires d_A = 2");
  }
  const Vec3& kv = k.vector();
  const double knk = kv.dot(weight_matrix(b.r_B) * kv);
  const Vec3 r_A = b.r_A;
  const double r = r_A.norm();
  if (r < kSmallBloch) {
    return (b.C * kv).norm() / std::sqrt(knk);
  }
  const HessianMatrix h = hessian_two_qubit(r_A, f);
  const Vec3 ck = b.C * kv;
  return ck.dot(h.lambda * ck) / (std::abs(h_f_prime(r, f)) * knk);
}

}  // namespace corrlab
