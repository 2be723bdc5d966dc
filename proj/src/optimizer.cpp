#include "corrlab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "corrlab/error.hpp"
#include "corrlab/geometry.hpp"

namespace corrlab {

std::string to_string(Method m) {
  switch (m) {
    case Method::ExactQuadratic: return "exact_quadratic";
    case Method::WeakCorrelation: return "weak_correlation";
    case Method::Oracle: return "oracle";
  }
  return "unknown";
}

namespace {

// k and -k are the same measurement; report the one whose largest component
// is positive.
Vec3 canonical_direction(const Vec3& k) {
  Vec3 v = k.normalized();
  int big = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v(i)) > std::abs(v(big)) + 1e-12) big = i;
  }
  return v(big) < 0.0 ? Vec3(-v) : v;
}

OptimizationResult solve_weighted(const RealMatrix& a, const BlochDecomposition& b,
                                  double s_marginal, Method method, double gap) {
  const GeneralizedEigen3 g =
      generalized_sym_eigen3(SymMatrix3(Mat3(a)), SymMatrix3(weight_matrix(b.r_B)),
                             tol::kPositiveDefinite, gap);
  OptimizationResult res;
  res.method = method;
  res.lambda_max = std::max(0.0, g.pairs.front().value);
  res.k_opt = g.pairs.front().vector;
  res.s_min = s_marginal - (2.0 / b.d_A) * res.lambda_max;
  res.degenerate = g.top_degenerate;
  return res;
}

}  // namespace

OptimizationResult minimize_quadratic(const BlochDecomposition& b, double degenerate_gap) {
  b.validate();
  const RealMatrix ctc = b.C.transpose() * b.C;
  return solve_weighted(ctc, b, quadratic_entropy_bloch(b.r_A, b.d_A),
                        Method::ExactQuadratic, degenerate_gap);
}

OptimizationResult minimize_weak_correlation(const BlochDecomposition& b,
                                             const EntropicForm& f,
                                             double degenerate_gap) {
  b.validate();
  const HessianMatrix h = hessian_for_bloch(b.r_A, b.d_A, f);
  // Only the block of Lambda on the range of C enters.
  const RealMatrix a = b.C.transpose() * h.lambda * b.C;
  return solve_weighted(0.5 * (a + a.transpose()), b, marginal_entropy(b, f),
                        Method::WeakCorrelation, degenerate_gap);
}

double weak_entropy_decrease(const BlochDecomposition& b, const ProjectiveDirection& k,
                             const EntropicForm& f) {
  const HessianMatrix h = hessian_for_bloch(b.r_A, b.d_A, f);
  const Vec3& kv = k.vector();
  const RealVector ck = b.C * kv;
  const double knk = kv.dot(weight_matrix(b.r_B) * kv);
  if (!(knk > 1e-14)) throw SingularWeightError("weak_entropy_decrease: k^T N_B k = 0");
  return (2.0 / b.d_A) * ck.dot(h.lambda * ck) / knk;
}

namespace {

using Objective = std::function<double(const Vec3&)>;

Objective make_objective(const BlochDecomposition& b, const EntropicForm& f) {
  if (b.d_A == 2) {
    const Vec3 r_A = b.r_A;
    const Vec3 r_B = b.r_B;
    const Mat3 c = b.C;
    return [r_A, r_B, c, f](const Vec3& k) {
      double s = 0.0;
      const Vec3 ck = c * k;
      const double rbk = r_B.dot(k);
      for (double sign : {1.0, -1.0}) {
        const double denom = 1.0 + sign * rbk;
        if (!(0.5 * denom > kZeroProbability)) continue;
        const Vec3 r = r_A + (sign / denom) * ck;
        s += 0.5 * denom * h_f(std::min(r.norm(), 1.0), f);
      }
      return s;
    };
  }
  return [&b, f](const Vec3& k) {
    return conditional_entropy(b, ProjectiveDirection(k.normalized()), f);
  };
}

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1)/2

// Minimizes g on a bracket grown outward from [-h, h] until the interior
// point is lowest, then shrinks it by golden sections to width `tol`.
double line_minimize(const std::function<double(double)>& g, double h, double tol,
                     double& best_value) {
  double a = -h;
  double m = 0.0;
  double c = h;
  double ga = g(a);
  double gm = best_value;
  double gc = g(c);
  for (int i = 0; i < 60 && !(gm <= ga && gm <= gc); ++i) {
    if (ga < gc) {
      c = m; gc = gm;
      m = a; gm = ga;
      a = m - (c - m) / kInvPhi;
      ga = g(a);
    } else {
      a = m; ga = gm;
      m = c; gm = gc;
      c = m + (m - a) / kInvPhi;
      gc = g(c);
    }
    if (std::abs(a) > 1.5 || std::abs(c) > 1.5) break;
  }
  double x1 = c - kInvPhi * (c - a);
  double x2 = a + kInvPhi * (c - a);
  double g1 = g(x1);
  double g2 = g(x2);
  while (c - a > tol) {
    if (g1 <= g2) {
      c = x2;
      x2 = x1; g2 = g1;
      x1 = c - kInvPhi * (c - a);
      g1 = g(x1);
    } else {
      a = x1;
      x1 = x2; g1 = g2;
      x2 = a + kInvPhi * (c - a);
      g2 = g(x2);
    }
  }
  double t = 0.0;
  double v = best_value;
  for (auto [tx, gx] : {std::pair{x1, g1}, std::pair{x2, g2}, std::pair{m, gm},
                        std::pair{a, ga}, std::pair{c, gc}}) {
    if (gx < v) {
      v = gx;
      t = tx;
    }
  }
  best_value = v;
  return t;
}

struct Chart {
  Vec3 center;
  Vec3 e1;
  Vec3 e2;

  explicit Chart(const Vec3& k) : center(k.normalized()) {
    const Vec3 seed = std::abs(center.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    e1 = (seed - seed.dot(center) * center).normalized();
    e2 = center.cross(e1);
  }
  Vec3 point(double u, double v) const { return (center + u * e1 + v * e2).normalized(); }
};

// Powell's conjugate-direction search in a gnomonic chart re-centered at
// every outer iteration.
Vec3 refine(const Objective& obj, const Vec3& start, double& value, double step,
            const OracleOptions& opt) {
  Chart chart(start);
  value = obj(chart.center);
  Eigen::Vector2d dirs[2] = {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
  for (int it = 0; it < opt.refine_iters; ++it) {
    const double start_value = value;
    Eigen::Vector2d x = Eigen::Vector2d::Zero();
    double largest_drop = -1.0;
    int largest_index = 0;
    for (int d = 0; d < 2; ++d) {
      const double before = value;
      const Eigen::Vector2d dir = dirs[d];
      const Eigen::Vector2d base = x;
      const double t = line_minimize(
          [&](double s) {
            const Eigen::Vector2d p = base + s * dir;
            return obj(chart.point(p.x(), p.y()));
          },
          step, opt.angular_tol, value);
      x = base + t * dir;
      if (before - value > largest_drop) {
        largest_drop = before - value;
        largest_index = d;
      }
    }
    const double moved = x.norm();
    if (moved > 0.0) {
      const Eigen::Vector2d dir = x / moved;
      const Eigen::Vector2d base = x;
      const double t = line_minimize(
          [&](double s) {
            const Eigen::Vector2d p = base + s * dir;
            return obj(chart.point(p.x(), p.y()));
          },
          std::max(moved, opt.angular_tol), opt.angular_tol, value);
      x = base + t * dir;
      dirs[largest_index] = dirs[1 - largest_index];
      dirs[1] = dir;
    }
    const Vec3 next = chart.point(x.x(), x.y());
    const Chart moved_chart(next);
    // Carry the search directions into the new tangent plane.
    for (auto& d : dirs) {
      const Vec3 t = d.x() * chart.e1 + d.y() * chart.e2;
      Eigen::Vector2d nd(t.dot(moved_chart.e1), t.dot(moved_chart.e2));
      const double n = nd.norm();
      d = n > 1e-6 ? Eigen::Vector2d(nd / n) : Eigen::Vector2d(1, 0);
    }
    if (std::abs(dirs[0].x() * dirs[1].y() - dirs[0].y() * dirs[1].x()) < 1e-3) {
      dirs[0] = Eigen::Vector2d(1, 0);
      dirs[1] = Eigen::Vector2d(0, 1);
    }
    chart = moved_chart;
    step = std::max(std::min(step, 2.0 * std::max(x.norm(), opt.angular_tol)), 1e-6);
    const double drop = start_value - value;
    if (x.norm() <= opt.angular_tol ||
        drop <= 1e-15 * std::max(1.0, std::abs(value))) {
      break;
    }
  }
  return chart.center;
}

bool lex_less(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

}  // namespace

OptimizationResult minimize_oracle(const BlochDecomposition& b, const EntropicForm& f,
                                   const OracleOptions& opt) {
  b.validate();
  if (opt.grid_n < 1) throw ValidationError("minimize_oracle: grid_n must be >= 1");
  const Objective obj = make_objective(b, f);

  const std::vector<Vec3> grid = fibonacci_hemisphere(opt.grid_n);
  std::vector<std::pair<double, int>> values;
  values.reserve(grid.size());
  for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
    values.emplace_back(obj(grid[i]), i);
  }
  std::sort(values.begin(), values.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return lex_less(grid[x.second], grid[y.second]);
  });

  // Mean spacing of the grid, used as the first line-search bracket.
  const double spacing = std::sqrt(2.0 * 3.141592653589793 / opt.grid_n);
  const double separation = std::max(0.3, 3.0 * spacing);
  std::vector<Vec3> seeds;
  for (const auto& [v, i] : values) {
    if (static_cast<int>(seeds.size()) >= std::max(opt.candidates, 1)) break;
    const Vec3& k = grid[i];
    bool far = true;
    for (const Vec3& s : seeds) {
      if (std::acos(std::min(1.0, std::abs(s.dot(k)))) < separation) far = false;
    }
    if (far) seeds.push_back(k);
  }

  OptimizationResult res;
  res.method = Method::Oracle;
  double best = values.front().first;
  res.k_opt = canonical_direction(grid[values.front().second]);
  for (const Vec3& seed : seeds) {
    double v = 0.0;
    const Vec3 k = canonical_direction(refine(obj, seed, v, spacing, opt));
    if (v < best || (v == best && lex_less(res.k_opt, k))) {
      best = v;
      res.k_opt = k;
    }
  }
  res.s_min = best;
  res.lambda_max = std::max(0.0, 0.5 * b.d_A * (marginal_entropy(b, f) - best));
  return res;
}

AlignedDecrease aligned_axes_decrease(const BlochDecomposition& b, const EntropicForm& f,
                                      const ProjectiveDirection& k) {
  constexpr double kAlign = 1e-10;
  if (b.d_A != 2) throw ValidationError("aligned_axes_decrease: requires d_A = 2");
  const Mat3 c = b.C;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j && std::abs(c(i, j)) > kAlign) {
        throw ValidationError("aligned_axes_decrease: C is not diagonal");
      }
    }
  }
  auto axis_of = [&](const Vec3& r, const char* what) {
    int axis = -1;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(r(i)) > kAlign) {
        if (axis >= 0) {
          throw ValidationError(std::string("aligned_axes_decrease: ") + what +
                                " is not along a coordinate axis");
        }
        axis = i;
      }
    }
    return axis;
  };
  const Vec3 r_A = b.r_A;
  const int a_axis = axis_of(r_A, "r_A");
  const int b_axis = axis_of(b.r_B, "r_B");
  const double ra = r_A.norm();
  const double rb2 = b.r_B.squaredNorm();

  double scale = 0.0;
  double eta = 1.0;
  if (ra < kSmallBloch) {
    scale = 0.5 * std::abs(h_f_second(0.0, f));
  } else {
    scale = std::abs(h_f_prime(ra, f)) / (2.0 * ra);
    eta = eta_f(ra, f);
  }

  AlignedDecrease out;
  out.parallel = a_axis < 0 || b_axis < 0 || a_axis == b_axis;
  const Vec3& kv = k.vector();
  double num = 0.0;
  out.max_value = -1.0;
  for (int mu = 0; mu < 3; ++mu) {
    const double w = (mu == a_axis) ? eta : 1.0;
    const double c2 = c(mu, mu) * c(mu, mu);
    num += w * c2 * kv(mu) * kv(mu);
    const double along = scale * w * c2 / (1.0 - (mu == b_axis ? rb2 : 0.0));
    if (along > out.max_value) {
      out.max_value = along;
      out.max_axis = mu;
    }
  }
  const double kb = b_axis >= 0 ? kv(b_axis) : 0.0;
  out.value = scale * num / (1.0 - rb2 * kb * kb);
  return out;
}

}  // namespace corrlab
