// corrlab: conditional entropies, optimal measurements and discord for
// qudit-qubit states.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "corrlab/commands.hpp"
#include "corrlab/error.hpp"

namespace {

int default_jobs() {
  if (const char* env = std::getenv("CORRLAB_JOBS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw corrlab::ParseError("cannot write " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace corrlab;

  CLI::App app{"Conditional entropies, optimal local measurements and quantum discord "
               "for qudit-qubit states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string out_path;
  int jobs = default_jobs();
  Tolerances tol;
  app.add_option("--out", out_path, "Write output to this file instead of stdout");
  app.add_option("--jobs", jobs, "Worker threads for grid commands (default $CORRLAB_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-positivity", tol.positivity, "Smallest admissible eigenvalue of rho");
  app.add_option("--tol-degenerate", tol.degenerate, "Eigenvalue gap treated as a tie");
  app.add_option("--tol-angular", tol.angular, "Oracle refinement tolerance (radians)");

  std::string state_path;
  std::string entropy = "vn";
  std::string method;
  std::string plane = "xz";
  int steps = 360;
  int samples = 500;
  SectorScanOptions scan;

  auto* analyze = app.add_subcommand(
      "analyze", "Bloch vectors, correlation tensor, singular values, entropies, ellipsoid (JSON)");
  analyze->add_option("state", state_path, "State file (JSON)")->required();
  analyze->add_option("--entropy", entropy, "vn | quad | tsallis:<q>");

  auto* optimize = app.add_subcommand(
      "optimize", "Measurement direction minimizing the conditional entropy (JSON)");
  optimize->add_option("state", state_path, "State file (JSON)")->required();
  optimize->add_option("--entropy", entropy, "vn | quad | tsallis:<q>");
  optimize->add_option("--method", method, "exact (quad only) | weak | oracle")
      ->check(CLI::IsMember({"exact", "weak", "oracle"}));
  optimize->add_option("--grid", tol.grid, "Oracle hemisphere grid size")
      ->check(CLI::PositiveNumber);

  auto* discord = app.add_subcommand("discord", "Quantum discord, exact and weak-correlation (JSON)");
  discord->add_option("state", state_path, "State file (JSON)")->required();
  discord->add_option("--method", method, "exact | weak | both (default both)")
      ->check(CLI::IsMember({"exact", "weak", "both"}));
  discord->add_option("--grid", tol.grid, "Oracle hemisphere grid size")
      ->check(CLI::PositiveNumber);

  auto* profile = app.add_subcommand(
      "profile",
      "Entropy decrease and discord along a great circle (CSV).\n"
      "Columns: theta,dS2_exact,dSvn_exact,dSvn_approx,D_exact,D_quad_approx");
  profile->add_option("state", state_path, "Two-qubit state file (JSON)")->required();
  profile->add_option("--plane", plane, "xz: k=(sin t,0,cos t); xy; yz")
      ->check(CLI::IsMember({"xz", "xy", "yz"}));
  profile->add_option("--steps", steps, "Angles in [0, 2 pi)")->check(CLI::PositiveNumber);

  auto* sectors = app.add_subcommand(
      "scan-sectors",
      "Compare quadratic and von Neumann optimal axes over X states with J_y = J_x (CSV).\n"
      "Columns: r_A,J_x,sector (A: both along x, B: both along z, C: differ, invalid)");
  sectors->add_option("--r_B", scan.r_B, "Fixed r_B");
  sectors->add_option("--J_z", scan.J_z, "Fixed J_z");
  int grid_n = 100;
  sectors->add_option("--grid", grid_n, "Points per axis")->check(CLI::PositiveNumber);
  sectors->add_option("--r_A-min", scan.r_A_min, "Default: edge of the positive region");
  sectors->add_option("--r_A-max", scan.r_A_max, "Default: edge of the positive region");
  sectors->add_option("--J_x-min", scan.J_x_min, "Default: edge of the positive region");
  sectors->add_option("--J_x-max", scan.J_x_max, "Default: edge of the positive region");
  sectors->add_option("--oracle-grid", scan.oracle.grid_n, "Oracle hemisphere grid size")
      ->check(CLI::PositiveNumber);

  auto* ellipsoid = app.add_subcommand(
      "ellipsoid", "Conditional Bloch vectors over Fibonacci directions (CSV).\n"
                   "Columns: k_x,k_y,k_z,sign,r_1..r_D");
  ellipsoid->add_option("state", state_path, "State file (JSON)")->required();
  ellipsoid->add_option("--samples", samples, "Measurement directions")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    const EntropicForm f = EntropicForm::parse(entropy);
    std::string text;
    if (analyze->parsed()) {
      text = cmd_analyze(load_state_file(state_path, tol.positivity), f, tol).dump(2) + "\n";
    } else if (optimize->parsed()) {
      if (method.empty()) method = f.kind() == EntropicForm::Kind::Quadratic ? "exact" : "oracle";
      text = cmd_optimize(load_state_file(state_path, tol.positivity), f, method, tol).dump(2) +
             "\n";
    } else if (discord->parsed()) {
      if (method.empty()) method = "both";
      text = cmd_discord(load_state_file(state_path, tol.positivity), method, tol).dump(2) + "\n";
    } else if (profile->parsed()) {
      text = cmd_profile(load_state_file(state_path, tol.positivity), plane, steps, tol);
    } else if (sectors->parsed()) {
      scan.n_r_A = scan.n_J_x = grid_n;
      scan.jobs = jobs;
      scan.oracle.angular_tol = tol.angular;
      text = cmd_scan_sectors(scan);
    } else if (ellipsoid->parsed()) {
      text = cmd_ellipsoid(load_state_file(state_path, tol.positivity), samples);
    }
    emit(text, out_path);
  } catch (const std::exception& e) {
    std::cerr << "corrlab: " << e.what() << '\n';
    return exit_code(e);
  }
  return kExitOk;
}
