// Command-line front end: run configuration, radial sampling of a solution,
// and the flat-text outputs (profile and states tables).
//
// The tool itself is a thin wrapper around run_cli; everything here is a
// plain library function so the whole surface is unit-testable without
// spawning processes.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphereflame/solver.hpp"

namespace sphereflame {

// Exit codes of the command-line tool.
inline constexpr int exit_success = 0;
inline constexpr int exit_solver_failure = 1;
inline constexpr int exit_usage_error = 2;

enum class RunMode { mach, flame_speed, sweep };

// Stderr verbosity, selected by the SPHEREFLAME_LOG environment variable
// (quiet | info | debug); unrecognised values fall back to info.
enum class LogLevel { quiet, info, debug };

// One fully validated run request.  Exactly one of mach / u_f / u_f_list is
// meaningful, matching the mode.
struct RunConfig {
  RunMode mode = RunMode::flame_speed;
  std::string mixture = "hydrogen-air-stoichiometric";
  double p0 = 1.0e5;  // Pa
  double t0 = 283.0;  // K
  double mach = 0.0;
  double u_f = 0.0;
  std::vector<double> u_f_list;
  std::size_t n_cells = 5000;
  double sample_time = 1e-3;  // s, scales the radial grid of --out
  std::string profile_out;    // --out: radial profile CSV, empty = none
  std::string states_out;     // --states-out: states table CSV, empty = none
  bool refine_shock_position = false;  // report the bracket-interpolated sigma_r
  SolverConfig solver;
};

// Malformed or inconsistent command line; the tool maps it to exit status 2.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --help on the command line; carries the help text to print.
struct help_requested {
  std::string text;
};

// Parse command-line tokens (argv without the program name) plus an optional
// `--config` file of flat `key = value` lines with `#` comments; flags
// override file values.  Throws usage_error on unknown flags, a missing or
// conflicting mode/value combination, or out-of-range parameters, and
// help_requested for -h/--help.
RunConfig parse_config(const std::vector<std::string>& args);

// One radial sample row.
struct ProfileRow {
  double r = 0.0;    // m
  double rho = 0.0;  // kg m^-3
  double u = 0.0;    // m s^-1
  double p = 0.0;    // Pa
};

using ProfileTable = std::vector<ProfileRow>;

// Sample a solution at physical time t on the given radii: x = r / t, with
// the burnt state inside the reactive shock, the stored profile linearly
// interpolated between nodes across the intermediate zone, and the ambient
// state beyond the precursor.  The jumps at the shocks are exactly those of
// the stored states.  Requires t > 0 and radii >= 0.
ProfileTable sample_solution(const Solution& sol, double t,
                             const std::vector<double>& r_grid);

// CSV writers: header row, one record per line, 12 significant digits,
// period decimal separator regardless of locale, newline-terminated.
// Throw std::runtime_error on I/O failure.
void write_profile_csv(const ProfileTable& table, const std::string& path);

// One row per solution, columns
// uf,M_p,sigma_p,sigma_r,rho1,u1,p1,rho2,u2,p2,rho_b,p_b,T_b.
// With refine_shock_position the sigma_r column carries the
// bracket-interpolated shock position instead of the grid node.
void write_states_table(const std::vector<Solution>& solutions, const std::string& path,
                        bool refine_shock_position = false);

// Full tool: parse, solve, emit.  Returns the process exit status.
int run_cli(int argc, const char* const* argv);

}  // namespace sphereflame
