#pragma once

// Quantum discord with measurements on the qubit, exactly (projective oracle)
// and in the weak-correlation approximation, plus the X-state machinery used
// to compare von Neumann and quadratic optimal measurements.

#include <optional>
#include <string>
#include <vector>

#include "corrlab/optimizer.hpp"
#include "corrlab/states.hpp"

namespace corrlab {

struct DiscordResult {
  double discord = 0.0;
  double mutual_info = 0.0;
  Vec3 k_opt = Vec3::UnitZ();
  Method method = Method::Oracle;
  bool crossover = false;  // k_opt away from every principal axis of C
};

/// Angle (radians) above which an optimum counts as off-axis.
inline constexpr double kCrossoverAngle = 0.05;

/// S(rho_AB) in bits, from the spectrum of the reconstructed matrix.
double joint_entropy(const BlochDecomposition& b);

/// S(rho_A) + S(rho_B) - S(rho_AB), von Neumann, bits. Clamped at 0.
double mutual_information(const BlochDecomposition& b);

/// min_k S(A|B_k) - [S(rho_AB) - S(rho_B)] with the oracle minimizer.
DiscordResult discord_exact(const BlochDecomposition& b, const OracleOptions& opt = {});

/// I(A,B) - (2/d_A) lambda_max with lambda_max from the von Neumann Hessian
/// weighted eigenproblem.
DiscordResult discord_weak(const BlochDecomposition& b);

/// Smallest angle between k and the principal-axis subspaces of C (right
/// singular vectors, grouping singular values closer than 1e-9).
double principal_axis_angle(const BlochDecomposition& b, const Vec3& k);

/// Second-order mutual information (1/2) C^T Lambda(rho_A, rho_B) C over the
/// vectorized correlation tensor. Throws ApproximationInvalidError when
/// rho_A or rho_B is rank deficient.
double mutual_info_quadratic(const BlochDecomposition& b);

/// Closed form of mutual_info_quadratic for two-qubit states with diagonal C
/// and r_A, r_B along z. Throws ValidationError otherwise.
double mutual_info_quadratic_aligned(const BlochDecomposition& b);

/// mutual_info_quadratic_aligned - aligned von Neumann Delta S along k.
double discord_quadratic_form(const BlochDecomposition& b, const ProjectiveDirection& k);

/// Critical C_x^2 / C_z^2 for J_x = J_y X states: eta_f(r_A) / (1 - r_B^2).
double transition_zone(double r_A, double r_B, const EntropicForm& f);

enum class SectorLabel { A, B, C, Invalid };

std::string to_string(SectorLabel s);

struct SectorPoint {
  double r_A;
  double J_x;
  SectorLabel label;
};

struct ScanBox {
  double r_A_min;
  double r_A_max;
  double J_x_min;
  double J_x_max;
};

/// Bounding box of the positive J_y = J_x X states with r_A >= 0 at fixed
/// r_B, J_z. Throws DomainError when no such state exists.
ScanBox valid_box(double r_B, double J_z);

struct SectorScanOptions {
  double r_B = 0.25;
  double J_z = -0.25;
  // unset ranges default to valid_box(r_B, J_z)
  std::optional<double> r_A_min;
  std::optional<double> r_A_max;
  std::optional<double> J_x_min;
  std::optional<double> J_x_max;
  int n_r_A = 100;
  int n_J_x = 100;
  int jobs = 1;
  OracleOptions oracle{};
};

/// True when |k_z| >= 1/sqrt(2).
bool along_z(const Vec3& k);

/// Labels one X state with J_y = J_x.
SectorLabel classify_sector(double r_A, double J_x, double r_B, double J_z,
                            const OracleOptions& opt = {});

/// Row-major over r_A (outer) then J_x, both inclusive linspaces. Output order
/// does not depend on `jobs`.
std::vector<SectorPoint> sector_scan(const SectorScanOptions& opt);

}  // namespace corrlab
