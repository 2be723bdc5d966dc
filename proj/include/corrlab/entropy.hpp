#pragma once

// Trace-form entropies S_f(rho) = sum_i f(p_i) with f(0) = f(1) = 0 and the
// normalization 2 f(1/2) = 1, plus the one-qubit reductions h_f and eta_f.

#include <span>
#include <string>
#include <string_view>

#include "corrlab/smallalg.hpp"
#include "corrlab/states.hpp"

namespace corrlab {

class EntropicForm {
 public:
  enum class Kind { VonNeumann, Quadratic, Tsallis };

  static EntropicForm von_neumann() { return EntropicForm(Kind::VonNeumann, 1.0); }
  static EntropicForm quadratic() { return EntropicForm(Kind::Quadratic, 2.0); }
  /// q > 0, q != 1. Throws DomainError otherwise.
  static EntropicForm tsallis(double q);

  /// Parses "vn", "quad" or "tsallis:<q>". Throws ParseError.
  static EntropicForm parse(std::string_view spec);

  Kind kind() const { return kind_; }
  double q() const { return q_; }
  std::string name() const;

  double f(double p) const;
  double df(double p) const;
  double d2f(double p) const;

  /// True when f'' stays finite at p = 0, so a singular spectrum still gives
  /// a finite Hessian.
  bool regular_at_zero() const;

 private:
  EntropicForm(Kind kind, double q);

  Kind kind_;
  double q_;
  double cq_ = 1.0;  // Tsallis normalization 1 - 2^{1-q}
};

/// Spectrum values below this are treated as exact zeros.
inline constexpr double kSpectrumFloor = 1e-14;

double entropy_of_spectrum(std::span<const double> spectrum, const EntropicForm& f);

/// S_f(rho); throws InvalidStateError for non-positive or non-normalized rho.
double entropy_of(const DensityMatrix& rho, const EntropicForm& f);

/// S_f of (I + r . sigma)/d. Uses h_f(|r|) for d = 2.
double bloch_entropy(const RealVector& r, int d, const EntropicForm& f);

/// 2 (1 - (1 + |r_A|^2)/d_A).
double quadratic_entropy_bloch(const RealVector& r_A, int d_A);

/// f((1+r)/2) + f((1-r)/2) for r in [0, 1].
double h_f(double r, const EntropicForm& f);
double h_f_prime(double r, const EntropicForm& f);
double h_f_second(double r, const EntropicForm& f);

/// r h_f''(r) / h_f'(r), from closed forms; 1 at r = 0, DomainError at r >= 1.
double eta_f(double r, const EntropicForm& f);

}  // namespace corrlab
