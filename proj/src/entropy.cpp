#include "corrlab/entropy.hpp"

#include <cstdio>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "corrlab/error.hpp"

namespace corrlab {

namespace {
constexpr double kLn2 = std::numbers::ln2;
}

EntropicForm::EntropicForm(Kind kind, double q) : kind_(kind), q_(q) {
  if (kind_ == Kind::Tsallis) cq_ = 1.0 - std::pow(2.0, 1.0 - q_);
}

EntropicForm EntropicForm::tsallis(double q) {
  if (!(q > 0.0) || q == 1.0 || !std::isfinite(q)) {
    throw DomainError("tsallis: q must be positive and different from 1");
  }
  return EntropicForm(Kind::Tsallis, q);
}

EntropicForm EntropicForm::parse(std::string_view spec) {
  if (spec == "vn") return von_neumann();
  if (spec == "quad") return quadratic();
  constexpr std::string_view prefix = "tsallis:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string text(spec.substr(prefix.size()));
    try {
      size_t used = 0;
      const double q = std::stod(text, &used);
      if (used != text.size()) throw ParseError("trailing characters");
      return tsallis(q);
    } catch (const DomainError& e) {
      throw ParseError(std::string("entropy '") + std::string(spec) + "': " + e.what());
    } catch (const std::exception&) {
      throw ParseError("entropy '" + std::string(spec) + "': bad Tsallis index");
    }
  }
  throw ParseError("unknown entropy '" + std::string(spec) +
                   "' (expected vn, quad or tsallis:<q>)");
}

std::string EntropicForm::name() const {
  switch (kind_) {
    case Kind::VonNeumann:
      return "vn";
    case Kind::Quadratic:
      return "quad";
    case Kind::Tsallis: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "tsallis:%g", q_);
      return buf;
    }
  }
  return "?";
}

double EntropicForm::f(double p) const {
  if (p <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::VonNeumann:
      return -p * std::log2(p);
    case Kind::Quadratic:
      return 2.0 * p * (1.0 - p);
    case Kind::Tsallis:
      return (p - std::pow(p, q_)) / cq_;
  }
  return 0.0;
}

double EntropicForm::df(double p) const {
  switch (kind_) {
    case Kind::VonNeumann:
      return -(std::log(p) + 1.0) / kLn2;
    case Kind::Quadratic:
      return 2.0 - 4.0 * p;
    case Kind::Tsallis:
      return (1.0 - q_ * std::pow(p, q_ - 1.0)) / cq_;
  }
  return 0.0;
}

double EntropicForm::d2f(double p) const {
  switch (kind_) {
    case Kind::VonNeumann:
      return -1.0 / (p * kLn2);
    case Kind::Quadratic:
      return -4.0;
    case Kind::Tsallis:
      return -q_ * (q_ - 1.0) * std::pow(p, q_ - 2.0) / cq_;
  }
  return 0.0;
}

bool EntropicForm::regular_at_zero() const {
  switch (kind_) {
    case Kind::VonNeumann:
      return false;
    case Kind::Quadratic:
      return true;
    case Kind::Tsallis:
      return q_ >= 2.0;
  }
  return false;
}

double entropy_of_spectrum(std::span<const double> spectrum, const EntropicForm& f) {
  double s = 0.0;
  for (double p : spectrum) {
    if (p < kSpectrumFloor) continue;
    s += f.f(std::min(p, 1.0));
  }
  return s;
}

double entropy_of(const DensityMatrix& rho, const EntropicForm& f) {
  if (std::abs(rho.trace() - Complex(1.0)) > tol::kHermitian) {
    throw InvalidStateError("entropy_of: state does not have unit trace");
  }
  const HermitianEigen e = hermitian_eigen(rho);
  if (e.values(0) < -kPositivityTol) {
    throw InvalidStateError("entropy_of: state is not positive");
  }
  return entropy_of_spectrum({e.values.data(), static_cast<size_t>(e.values.size())}, f);
}

double bloch_entropy(const RealVector& r, int d, const EntropicForm& f) {
  if (d == 2) return h_f(std::min(r.norm(), 1.0), f);
  const HermitianEigen e = hermitian_eigen(bloch_to_matrix(r, d));
  return entropy_of_spectrum({e.values.data(), static_cast<size_t>(e.values.size())}, f);
}

double quadratic_entropy_bloch(const RealVector& r_A, int d_A) {
  return 2.0 * (1.0 - (1.0 + r_A.squaredNorm()) / d_A);
}

double h_f(double r, const EntropicForm& f) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("h_f: r must lie in [0, 1]");
  const double lo = 0.5 * (1.0 - r);
  const double hi = 0.5 * (1.0 + r);
  return f.f(hi < 1.0 - kSpectrumFloor ? hi : 1.0) + f.f(lo < kSpectrumFloor ? 0.0 : lo);
}

double h_f_prime(double r, const EntropicForm& f) {
  return 0.5 * (f.df(0.5 * (1.0 + r)) - f.df(0.5 * (1.0 - r)));
}

double h_f_second(double r, const EntropicForm& f) {
  return 0.25 * (f.d2f(0.5 * (1.0 + r)) + f.d2f(0.5 * (1.0 - r)));
}

double eta_f(double r, const EntropicForm& f) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("eta_f: r must lie in [0, 1)");
  if (r == 0.0) return 1.0;
  switch (f.kind()) {
    case EntropicForm::Kind::Quadratic:
      return 1.0;
    case EntropicForm::Kind::VonNeumann:
      // 2r / ((1 - r^2) ln((1+r)/(1-r))), with ln((1+r)/(1-r)) = 2 atanh(r)
      return r / ((1.0 - r * r) * std::atanh(r));
    case EntropicForm::Kind::Tsallis: {
      const double q = f.q();
      const double log_gamma = -2.0 * std::atanh(r);  // ln((1-r)/(1+r))
      const double num = 1.0 + std::exp((q - 2.0) * log_gamma);
      const double den = -std::expm1((q - 1.0) * log_gamma);  // 1 - gamma^{q-1}
      return (q - 1.0) * r / (1.0 + r) * num / den;
    }
  }
  return 1.0;
}

}  // namespace corrlab
