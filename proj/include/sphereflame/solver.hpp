// End-to-end solution assembly and the outer iteration on the precursor
// strength.
//
// For a given precursor Mach number the solution is direct: jump relations at
// the precursor, inward march of the similarity ODE to the reactive shock,
// jump relations to the burnt core.  For a given flame speed u_f the Mach
// number is found by a secant iteration on G(M) = (sigma_r - u2)(M) - u_f.
//
// The discrete flame-speed map has a floor: as M -> 1+ the marched flame
// speed does not tend to zero but to a strictly positive limit.  Targets
// below that floor belong to the degenerate weak-precursor family instead:
// the precursor strength vanishes, the disturbance dies out acoustically at
// the ambient sound radius, and the reactive shock speed is found by shooting
// on sigma_r so the outward-integrated flow fades into the ambient state.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sphereflame/gas.hpp"
#include "sphereflame/shocks.hpp"
#include "sphereflame/similarity_ode.hpp"

namespace sphereflame {

// Smallest admissible precursor Mach number; sub-unity secant iterates are
// clamped here once before any fallback decision.
inline constexpr double mach_floor = 1.0 + 1e-9;

// Parameters of the outer secant iteration (defaults follow the printed
// algorithm) plus the guards shared with the inner march.
struct SolverConfig {
  double m0 = 1.0001;           // first secant iterate
  double delta = 1e-3;          // second iterate offset: M1 = M0 + delta
  double epsilon = 1e-5;        // |G| tolerance, m s^-1
  std::size_t max_iter = 100;   // secant iteration cap
  double sonic_guard = default_sonic_guard;
};

// How a flame-speed solve reached its solution.
enum class SolveBranch {
  shocked,          // secant on M, flame speed read at the stopping node
  shocked_refined,  // secant on M, flame speed interpolated inside the
                    // residual bracket (used when grid quantisation keeps the
                    // node-valued objective from meeting the tolerance)
  weak_precursor,   // degenerate family below the discrete flame-speed floor
};

// Complete solution for one precursor strength.
struct Solution {
  GasModel model;
  double m_p = 0.0;      // precursor Mach number (exactly 1 on the weak branch)
  double sigma_p = 0.0;  // precursor speed; ambient sound speed on the weak branch
  PrecursorData prec;
  IntegrationOutcome outcome;
  ReactiveShockData react;
  double u_f = 0.0;  // flame speed sigma_r - u2
};

struct SecantIterate {
  double m = 0.0;  // Mach iterate
  double g = 0.0;  // objective value at m
};

// Record of the outer iteration.  The iterates list every Mach evaluation in
// order, including clamped ones and any refined-objective retry; final_abs_g
// is |flame speed - target| of the returned solution under the objective the
// winning branch used (identically ~0 on the weak branch by construction).
struct SecantTrace {
  std::vector<SecantIterate> iterates;
  bool converged = false;
  std::size_t k_final = 0;  // index of the accepted iterate (last evaluated)
  SolveBranch branch = SolveBranch::shocked;
  double final_abs_g = 0.0;
};

// Direct solve: precursor jump -> inward march -> burnt-core jump.
// Requires m_p > 1; propagates the march's errors; throws
// nonphysical_state_error when the burnt state is invalid.
Solution solve_given_mach(const GasModel& m, double m_p, std::size_t n_cells,
                          double sonic_guard = default_sonic_guard);

// Flame speed sigma_r - u2 of an assembled solution.
double flame_speed_of(const Solution& sol);

// Flame speed with the reactive shock position interpolated linearly inside
// the residual bracket; continuous in the precursor Mach number, unlike the
// node-valued flame speed which jumps when the stopping cell shifts.
// Meaningful for outcomes produced by the inward march.
double refined_flame_speed(const IntegrationOutcome& outcome);

// Degenerate weak-precursor solution for a prescribed flame speed: no shock,
// W1 = W0, and sigma_r shot so the outward-integrated flow returns to the
// ambient density exactly as the velocity fades.  Requires u_f > 0; throws
// secant_error when the shooting iteration fails.
Solution solve_weak_precursor(const GasModel& m, double u_f, std::size_t n_cells);

struct FlameSpeedSolve {
  Solution solution;
  SecantTrace trace;
};

// Secant inversion of the flame-speed map, with two fallbacks:
//  - grid quantisation blocks |G| <= epsilon -> retry on the refined
//    (bracket-interpolated) objective with a bisection-safeguarded secant;
//  - the map's floor at the Mach clamp sits above the target -> weak branch.
// Throws secant_error when no branch can deliver the target.
FlameSpeedSolve solve_given_flame_speed(const GasModel& m, double u_f_target,
                                        std::size_t n_cells,
                                        const SolverConfig& cfg = {});

// One entry of a flame-speed sweep; `ok` false records the failure message
// and leaves solution/trace default-constructed.
struct SweepEntry {
  double u_f_target = 0.0;
  bool ok = false;
  std::string error;
  Solution solution;
  SecantTrace trace;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // ordered as the input targets
  bool all_converged = false;
};

// Solve a list of flame-speed targets; per-entry failures are recorded and
// the sweep continues.  Requires a non-empty list of positive targets.
SweepResult sweep_flame_speeds(const GasModel& m, const std::vector<double>& u_f_values,
                               std::size_t n_cells, const SolverConfig& cfg = {});

}  // namespace sphereflame
