#pragma once

// Subcommand implementations behind the corrlab executable. Each returns its
// document (JSON record or CSV text); errors surface as exceptions that
// exit_code() maps to the process status.

#include <exception>
#include <string>

#include "json.hpp"

#include "corrlab/discord.hpp"
#include "corrlab/entropy.hpp"
#include "corrlab/state_io.hpp"

namespace corrlab {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitInvalidState = 3,
  kExitApproximation = 4,
};

/// ParseError, ValidationError, DomainError -> 2; InvalidStateError -> 3;
/// ApproximationInvalidError, SingularWeightError -> 4; anything else -> 1.
int exit_code(const std::exception& e);

struct Tolerances {
  double positivity = kPositivityTol;
  double degenerate = tol::kDegenerate;
  double angular = 1e-10;
  int grid = 2000;
};

nlohmann::json tolerances_json(const Tolerances& t);

nlohmann::json cmd_analyze(const StateSpec& s, const EntropicForm& f, const Tolerances& t);

/// method: "exact", "weak" or "oracle". "exact" requires the quadratic form.
nlohmann::json cmd_optimize(const StateSpec& s, const EntropicForm& f,
                            const std::string& method, const Tolerances& t);

/// method: "exact", "weak" or "both". With "both" an invalid weak estimate is
/// reported inline rather than raised.
nlohmann::json cmd_discord(const StateSpec& s, const std::string& method,
                           const Tolerances& t);

/// CSV: theta,dS2_exact,dSvn_exact,dSvn_approx,D_exact,D_quad_approx.
/// plane "xz": k = (sin t, 0, cos t); "xy": (cos t, sin t, 0); "yz": (0, sin t, cos t).
std::string cmd_profile(const StateSpec& s, const std::string& plane, int steps,
                        const Tolerances& t);

/// CSV: r_A,J_x,sector.
std::string cmd_scan_sectors(const SectorScanOptions& opt);

/// CSV: k_x,k_y,k_z,sign,r_1..r_{D_A}.
std::string cmd_ellipsoid(const StateSpec& s, int samples);

/// printf("%.12g") with "-0" folded to "0".
std::string format_number(double v);

}  // namespace corrlab
