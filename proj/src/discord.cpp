#include "corrlab/discord.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "corrlab/error.hpp"
#include "corrlab/hessian.hpp"

namespace corrlab {

double joint_entropy(const BlochDecomposition& b) {
  const HermitianEigen e = hermitian_eigen(reconstruct(b));
  return entropy_of_spectrum({e.values.data(), static_cast<size_t>(e.values.size())},
                             EntropicForm::von_neumann());
}

double mutual_information(const BlochDecomposition& b) {
  const EntropicForm vn = EntropicForm::von_neumann();
  const double s_a = bloch_entropy(b.r_A, b.d_A, vn);
  const double s_b = h_f(std::min(b.r_B.norm(), 1.0), vn);
  return std::max(0.0, s_a + s_b - joint_entropy(b));
}

double principal_axis_angle(const BlochDecomposition& b, const Vec3& k) {
  const TallSvd svd = svd_tall(b.C);
  const Vec3 kn = k.normalized();
  double best = 4.0;
  int start = 0;
  while (start < 3) {
    int end = start + 1;
    while (end < 3 && svd.singular(end - 1) - svd.singular(end) < tol::kDegenerate) ++end;
    double proj2 = 0.0;
    for (int j = start; j < end; ++j) {
      const double c = svd.v.col(j).dot(kn);
      proj2 += c * c;
    }
    best = std::min(best, std::acos(std::clamp(std::sqrt(proj2), 0.0, 1.0)));
    start = end;
  }
  return best;
}

DiscordResult discord_exact(const BlochDecomposition& b, const OracleOptions& opt) {
  const EntropicForm vn = EntropicForm::von_neumann();
  const OptimizationResult o = minimize_oracle(b, vn, opt);
  const double s_ab = joint_entropy(b);
  const double s_b = h_f(std::min(b.r_B.norm(), 1.0), vn);
  DiscordResult d;
  d.method = Method::Oracle;
  d.k_opt = o.k_opt;
  d.discord = o.s_min - (s_ab - s_b);
  d.mutual_info = mutual_information(b);
  d.crossover = principal_axis_angle(b, o.k_opt) > kCrossoverAngle;
  return d;
}

DiscordResult discord_weak(const BlochDecomposition& b) {
  const OptimizationResult o = minimize_weak_correlation(b, EntropicForm::von_neumann());
  DiscordResult d;
  d.method = Method::WeakCorrelation;
  d.k_opt = o.k_opt;
  d.mutual_info = mutual_information(b);
  d.discord = d.mutual_info - (2.0 / b.d_A) * o.lambda_max;
  d.crossover = principal_axis_angle(b, o.k_opt) > kCrossoverAngle;
  return d;
}

namespace {

// (1/ln 2) ln(x/y)/(x - y), the divided difference of the log.
double log_divided(double x, double y) {
  const double t = (x - y) / y;
  double g;
  if (std::abs(t) < 1e-8) {
    g = (1.0 - 0.5 * t) / y;
  } else {
    g = std::log1p(t) / (x - y);
  }
  return g / std::log(2.0);
}

}  // namespace

double mutual_info_quadratic(const BlochDecomposition& b) {
  b.validate();
  const int d_A = b.d_A;
  const OperatorBasis& basis_a = basis_for(d_A);
  const OperatorBasis& basis_b = basis_for(2);
  const HermitianEigen ea = hermitian_eigen(bloch_to_matrix(b.r_A, d_A));
  const HermitianEigen eb = hermitian_eigen(bloch_to_matrix(RealVector(b.r_B), 2));
  if (ea.values(0) < kSpectrumFloor || eb.values(0) < kSpectrumFloor) {
    throw ApproximationInvalidError(
        "mutual_info_quadratic: a marginal is rank deficient");
  }

  // X = sum C_{mu nu} sigma_mu (x) sigma_nu in the product eigenbasis.
  const int n = 2 * d_A;
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (int mu = 0; mu < basis_a.size(); ++mu) {
    const ComplexMatrix sa = ea.vectors.adjoint() * basis_a.generators[mu] * ea.vectors;
    for (int nu = 0; nu < 3; ++nu) {
      const double c = b.C(mu, nu);
      if (c == 0.0) continue;
      const ComplexMatrix sb = eb.vectors.adjoint() * basis_b.generators[nu] * eb.vectors;
      x += c * kron(sa, sb);
    }
  }

  RealVector p(n);
  for (int i = 0; i < d_A; ++i) {
    for (int k = 0; k < 2; ++k) p(i * 2 + k) = ea.values(i) * eb.values(k);
  }
  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      acc += log_divided(p(a), p(c)) * std::norm(x(a, c));
    }
  }
  return 0.5 * acc / (4.0 * d_A * d_A);
}

namespace {

void require_z_aligned(const BlochDecomposition& b, const char* who) {
  constexpr double kAlign = 1e-10;
  bool ok = b.d_A == 2;
  if (ok) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j && std::abs(b.C(i, j)) > kAlign) ok = false;
      }
    }
    for (int i = 0; i < 2; ++i) {
      if (std::abs(b.r_A(i)) > kAlign || std::abs(b.r_B(i)) > kAlign) ok = false;
    }
  }
  if (!ok) {
    throw ValidationError(std::string(who) +
                          ": requires a two-qubit state with diagonal C and "
                          "r_A, r_B along z");
  }
}

// (atanh a + atanh b)/(a + b)
double atanh_ratio(double a, double b) {
  const double s = a + b;
  const double u = s / (1.0 + a * b);
  if (std::abs(u) < 1e-6) return (1.0 + u * u / 3.0) / (1.0 + a * b);
  return std::atanh(u) / s;
}

}  // namespace

double mutual_info_quadratic_aligned(const BlochDecomposition& b) {
  require_z_aligned(b, "mutual_info_quadratic_aligned");
  const double ra = b.r_A(2);
  const double rb = b.r_B(2);
  if (std::abs(ra) >= 1.0 || std::abs(rb) >= 1.0) {
    throw ApproximationInvalidError(
        "mutual_info_quadratic_aligned: a marginal is rank deficient");
  }
  const double cx = b.C(0, 0);
  const double cy = b.C(1, 1);
  const double cz = b.C(2, 2);
  double sum = 0.0;
  for (double nu : {1.0, -1.0}) {
    const double cc = cx - nu * cy;
    sum += 0.5 * cc * cc * atanh_ratio(ra, nu * rb);
  }
  sum += cz * cz / ((1.0 - ra * ra) * (1.0 - rb * rb));
  return sum / (2.0 * std::log(2.0));
}

double discord_quadratic_form(const BlochDecomposition& b, const ProjectiveDirection& k) {
  require_z_aligned(b, "discord_quadratic_form");
  return mutual_info_quadratic_aligned(b) -
         aligned_axes_decrease(b, EntropicForm::von_neumann(), k).value;
}

double transition_zone(double r_A, double r_B, const EntropicForm& f) {
  if (!(r_B > -1.0 && r_B < 1.0)) throw DomainError("transition_zone: |r_B| must be < 1");
  return eta_f(std::abs(r_A), f) / (1.0 - r_B * r_B);
}

std::string to_string(SectorLabel s) {
  switch (s) {
    case SectorLabel::A: return "A";
    case SectorLabel::B: return "B";
    case SectorLabel::C: return "C";
    case SectorLabel::Invalid: return "invalid";
  }
  return "invalid";
}

bool along_z(const Vec3& k) { return std::abs(k.z()) >= std::sqrt(0.5); }

SectorLabel classify_sector(double r_A, double J_x, double r_B, double J_z,
                            const OracleOptions& opt) {
  const XStateParams p{r_A, r_B, J_x, J_x, J_z};
  if (!p.is_positive()) return SectorLabel::Invalid;
  const BlochDecomposition b = x_state(p);
  const bool quad_z = along_z(minimize_quadratic(b).k_opt);
  const bool vn_z = along_z(discord_exact(b, opt).k_opt);
  if (quad_z != vn_z) return SectorLabel::C;
  return quad_z ? SectorLabel::B : SectorLabel::A;
}

namespace {

double linspace_at(double lo, double hi, int n, int i) {
  if (n <= 1) return lo;
  if (i == n - 1) return hi;
  return lo + (hi - lo) * i / (n - 1);
}

}  // namespace

ScanBox valid_box(double r_B, double J_z) {
  // With J_y = J_x the conditions are p_+- >= 0 and q_+ q_- >= J_x^2 / 4.
  const double r_A_max = std::min({1.0, 1.0 - r_B + J_z, 1.0 + r_B - J_z});
  const double r_A_min = std::max(0.0, std::max(-(1.0 + r_B + J_z), -(1.0 - r_B - J_z)));
  if (!(r_A_max >= r_A_min) || std::abs(r_B) > 1.0 || std::abs(J_z) > 1.0) {
    throw DomainError("valid_box: no positive X state with these r_B, J_z");
  }
  // q_+ q_- = ((1 - J_z)^2 - (r_A - r_B)^2)/16 is largest where r_A is closest to r_B
  const double gap = std::clamp(r_B, r_A_min, r_A_max) - r_B;
  const double j_max = 0.5 * std::sqrt(std::max(0.0, (1.0 - J_z) * (1.0 - J_z) - gap * gap));
  return {r_A_min, r_A_max, -j_max, j_max};
}

std::vector<SectorPoint> sector_scan(const SectorScanOptions& opt) {
  if (opt.n_r_A < 1 || opt.n_J_x < 1) throw ValidationError("sector_scan: empty grid");
  ScanBox box{0.0, 0.0, 0.0, 0.0};
  if (!opt.r_A_min || !opt.r_A_max || !opt.J_x_min || !opt.J_x_max) {
    box = valid_box(opt.r_B, opt.J_z);
  }
  const double ra_lo = opt.r_A_min.value_or(box.r_A_min);
  const double ra_hi = opt.r_A_max.value_or(box.r_A_max);
  const double jx_lo = opt.J_x_min.value_or(box.J_x_min);
  const double jx_hi = opt.J_x_max.value_or(box.J_x_max);
  const size_t total = static_cast<size_t>(opt.n_r_A) * static_cast<size_t>(opt.n_J_x);
  std::vector<SectorPoint> out(total);
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (size_t idx = next++; idx < total; idx = next++) {
        const int i = static_cast<int>(idx / opt.n_J_x);
        const int j = static_cast<int>(idx % opt.n_J_x);
        const double r_A = linspace_at(ra_lo, ra_hi, opt.n_r_A, i);
        const double J_x = linspace_at(jx_lo, jx_hi, opt.n_J_x, j);
        out[idx] = {r_A, J_x, classify_sector(r_A, J_x, opt.r_B, opt.J_z, opt.oracle)};
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = total;
    }
  };
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace corrlab
