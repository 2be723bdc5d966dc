#include "corrlab/commands.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "corrlab/error.hpp"
#include "corrlab/geometry.hpp"
#include "corrlab/hessian.hpp"
#include "corrlab/measurement.hpp"
#include "corrlab/optimizer.hpp"

namespace corrlab {

using nlohmann::json;

int exit_code(const std::exception& e) {
  if (dynamic_cast<const InvalidStateError*>(&e)) return kExitInvalidState;
  if (dynamic_cast<const ApproximationInvalidError*>(&e) ||
      dynamic_cast<const SingularWeightError*>(&e)) {
    return kExitApproximation;
  }
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const DomainError*>(&e) || dynamic_cast<const InvalidPovmError*>(&e)) {
    return kExitParse;
  }
  return 1;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") return "0";
  return s;
}

json tolerances_json(const Tolerances& t) {
  return {{"positivity", t.positivity},
          {"degenerate", t.degenerate},
          {"angular", t.angular},
          {"grid", t.grid}};
}

namespace {

json vec_json(const RealVector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json record(const std::string& command, const StateSpec& s, const Tolerances& t,
            json outputs) {
  return {{"tool", "corrlab"},
          {"version", kToolVersion},
          {"command", command},
          {"input", {{"form", to_string(s.form)}, {"state", s.source}}},
          {"tolerances", tolerances_json(t)},
          {"outputs", std::move(outputs)}};
}

OracleOptions oracle_options(const Tolerances& t) {
  OracleOptions o;
  o.grid_n = t.grid;
  o.angular_tol = t.angular;
  return o;
}

json result_json(const OptimizationResult& r) {
  return {{"k_opt", vec_json(r.k_opt)},
          {"lambda_max", r.lambda_max},
          {"s_min", r.s_min},
          {"method", to_string(r.method)},
          {"degenerate", r.degenerate}};
}

json discord_json(const DiscordResult& d) {
  return {{"discord", d.discord},
          {"mutual_info", d.mutual_info},
          {"k_opt", vec_json(d.k_opt)},
          {"method", to_string(d.method)},
          {"crossover", d.crossover}};
}

}  // namespace

json cmd_analyze(const StateSpec& s, const EntropicForm& f, const Tolerances& t) {
  const BlochDecomposition& b = s.state;
  const TallSvd svd = svd_tall(b.C);
  json out = {{"state", to_json(b)},
              {"entropy", f.name()},
              {"singular_values", vec_json(svd.singular)},
              {"S_A", marginal_entropy(b, f)},
              {"S_B", h_f(std::min(b.r_B.norm(), 1.0), f)},
              {"mutual_info", mutual_information(b)}};
  if (is_boundary(b)) {
    out["ellipsoid"] = nullptr;
  } else {
    const CorrelationEllipsoid e = correlation_ellipsoid(b);
    json axes = json::array();
    for (const auto& a : e.axes) {
      axes.push_back({{"direction", vec_json(a.direction)}, {"semi_axis", a.semi_axis}});
    }
    out["ellipsoid"] = {{"center", vec_json(e.center)}, {"rank", e.rank}, {"axes", axes}};
  }
  return record("analyze", s, t, out);
}

json cmd_optimize(const StateSpec& s, const EntropicForm& f, const std::string& method,
                  const Tolerances& t) {
  const BlochDecomposition& b = s.state;
  OptimizationResult r;
  if (method == "exact") {
    if (f.kind() != EntropicForm::Kind::Quadratic) {
      throw ValidationError("optimize: --method exact requires --entropy quad");
    }
    r = minimize_quadratic(b, t.degenerate);
  } else if (method == "weak") {
    r = minimize_weak_correlation(b, f, t.degenerate);
  } else if (method == "oracle") {
    r = minimize_oracle(b, f, oracle_options(t));
  } else {
    throw ParseError("optimize: unknown method " + method);
  }
  json out = result_json(r);
  out["entropy"] = f.name();
  out["S_A"] = marginal_entropy(b, f);
  out["crossover"] = principal_axis_angle(b, r.k_opt) > kCrossoverAngle;
  return record("optimize", s, t, out);
}

json cmd_discord(const StateSpec& s, const std::string& method, const Tolerances& t) {
  const BlochDecomposition& b = s.state;
  json out = json::object();
  if (method != "exact" && method != "weak" && method != "both") {
    throw ParseError("discord: unknown method " + method);
  }
  if (method != "weak") out["exact"] = discord_json(discord_exact(b, oracle_options(t)));
  if (method == "weak") {
    out["weak"] = discord_json(discord_weak(b));
  } else if (method == "both") {
    try {
      out["weak"] = discord_json(discord_weak(b));
    } catch (const ApproximationInvalidError& e) {
      out["weak"] = {{"error", e.what()}};
    } catch (const SingularWeightError& e) {
      out["weak"] = {{"error", e.what()}};
    }
  }
  return record("discord", s, t, out);
}

namespace {

bool z_aligned(const BlochDecomposition& b) {
  if (b.d_A != 2) return false;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j && std::abs(b.C(i, j)) > 1e-10) return false;
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (std::abs(b.r_A(i)) > 1e-10 || std::abs(b.r_B(i)) > 1e-10) return false;
  }
  return true;
}

}  // namespace

std::string cmd_profile(const StateSpec& s, const std::string& plane, int steps,
                        const Tolerances&) {
  const BlochDecomposition& b = s.state;
  if (b.d_A != 2) throw ValidationError("profile: requires a two-qubit state");
  if (steps < 1) throw ValidationError("profile: --steps must be >= 1");
  if (plane != "xz" && plane != "xy" && plane != "yz") {
    throw ParseError("profile: unknown plane " + plane);
  }
  const EntropicForm vn = EntropicForm::von_neumann();
  const EntropicForm quad = EntropicForm::quadratic();
  const bool aligned = z_aligned(b);
  const double s_a = marginal_entropy(b, vn);
  const double s_cond_q = joint_entropy(b) - h_f(std::min(b.r_B.norm(), 1.0), vn);
  // Raises ApproximationInvalidError before any output is produced.
  const double i_quad = aligned ? mutual_info_quadratic_aligned(b) : mutual_info_quadratic(b);
  const HessianMatrix lambda = hessian_for_bloch(b.r_A, 2, vn);

  std::ostringstream os;
  os << "theta,dS2_exact,dSvn_exact,dSvn_approx,D_exact,D_quad_approx\n";
  for (int i = 0; i < steps; ++i) {
    const double th = 2.0 * std::numbers::pi * i / steps;
    Vec3 k;
    if (plane == "xz") {
      k = Vec3(std::sin(th), 0.0, std::cos(th));
    } else if (plane == "xy") {
      k = Vec3(std::cos(th), std::sin(th), 0.0);
    } else {
      k = Vec3(0.0, std::sin(th), std::cos(th));
    }
    const ProjectiveDirection dir = ProjectiveDirection::normalized(k);
    const double ds2 = entropy_decrease(b, dir, quad);
    const double s_cond = conditional_entropy(b, dir, vn);
    const double dsvn = std::max(0.0, s_a - s_cond);
    double approx;
    if (aligned) {
      approx = aligned_axes_decrease(b, vn, dir).value;
    } else {
      const Vec3 ck = b.C * dir.vector();
      approx = ck.dot(lambda.lambda * ck) / dir.vector().dot(weight_matrix(b.r_B) * dir.vector());
    }
    const double d_exact = s_cond - s_cond_q;
    const double d_approx = i_quad - approx;
    os << format_number(th) << ',' << format_number(ds2) << ',' << format_number(dsvn) << ','
       << format_number(approx) << ',' << format_number(d_exact) << ','
       << format_number(d_approx) << '\n';
  }
  return os.str();
}

std::string cmd_scan_sectors(const SectorScanOptions& opt) {
  const std::vector<SectorPoint> pts = sector_scan(opt);
  std::ostringstream os;
  os << "r_A,J_x,sector\n";
  for (const auto& p : pts) {
    os << format_number(p.r_A) << ',' << format_number(p.J_x) << ',' << to_string(p.label)
       << '\n';
  }
  return os.str();
}

std::string cmd_ellipsoid(const StateSpec& s, int samples) {
  const BlochDecomposition& b = s.state;
  std::ostringstream os;
  os << "k_x,k_y,k_z,sign";
  for (int i = 1; i <= b.dim_A(); ++i) os << ",r_" << i;
  os << '\n';
  for (const SurfacePoint& p : sample_surface(b, samples)) {
    os << format_number(p.k.x()) << ',' << format_number(p.k.y()) << ','
       << format_number(p.k.z()) << ',' << p.sign;
    for (Eigen::Index i = 0; i < p.r.size(); ++i) os << ',' << format_number(p.r(i));
    os << '\n';
  }
  return os.str();
}

}  // namespace corrlab
