// Self-similar flow in the intermediate zone between the precursor shock and
// the reactive shock.
//
// In the similarity variable x = r / t the smooth flow obeys
//
//   rho'(x) = -2 u (u - x) rho / (x ((u - x)^2 - c^2))
//   u'(x)   =  2 c^2 u     /     (x ((u - x)^2 - c^2))
//
// with c^2 = gamma_u s1 rho^(gamma_u - 1), s1 the entropy surrogate frozen at
// the precursor.  Starting from the post-precursor state at x = sigma_p, an
// explicit Euler march with step dx = sigma_p / N walks inward until the
// reactive-shock residual changes sign; the node just above the sign change
// is taken as the reactive shock position sigma_r.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sphereflame/gas.hpp"
#include "sphereflame/shocks.hpp"

namespace sphereflame {

// Relative width of the protective band around the sonic denominator
// (u - x)^2 - c^2: the march aborts instead of dividing by a value within
// eta * c^2 of zero.
inline constexpr double default_sonic_guard = 1e-10;

// Hard cap on the grid size; the whole per-node profile is kept in memory.
inline constexpr std::size_t max_grid_cells = 10'000'000;

struct OdeRhs {
  double drho_dx = 0.0;
  double du_dx = 0.0;
};

// Right-hand side of the similarity ODE.  Throws std::domain_error for
// x <= 0, rho <= 0 or s1 <= 0 and sonic_singularity_error when the
// denominator sits inside the guard band.
OdeRhs ode_rhs(double x, double rho, double u, const GasModel& m, double s1);

// Discrete flow profile over [sigma_r, sigma_p], node values in ascending x.
struct IntermediateProfile {
  std::vector<double> x;             // node positions, x.back() = sigma_p
  std::vector<double> rho;
  std::vector<double> u;
  std::vector<double> p;             // s1 * rho^gamma_u
  std::vector<double> sonic_margin;  // u + c - x, positive everywhere
  double s1 = 0.0;

  std::size_t size() const { return x.size(); }
};

// Result of the inward march.
struct IntegrationOutcome {
  IntermediateProfile profile;
  double sigma_r = 0.0;  // grid node just above the residual sign change
  GasState w2;           // state at sigma_r
  GasState w_stop;       // state at the stopping node sigma_r - dx (residual <= 0)
  std::size_t n_stop = 0;  // grid index of the first node with residual <= 0
  double dx = 0.0;         // grid spacing sigma_p / N
  // Residual bracket around the shock: (value at n_stop, value at n_stop + 1),
  // first <= 0 < second.
  std::pair<double, double> fr_bracket{0.0, 0.0};
};

// March inward from the precursor on an N-cell grid until the reactive-shock
// residual changes sign.  Throws:
//   std::domain_error          on bad N or a broken model / precursor state,
//   std::invalid_argument      when the residual is already non-positive at
//                              sigma_p (no admissible flame for this input),
//   sonic_singularity_error    when the sonic guard trips before a sign change,
//   no_root_error              when the grid is exhausted with no sign change.
IntegrationOutcome integrate_intermediate(const PrecursorData& pre, const GasModel& m,
                                          std::size_t n_cells,
                                          double sonic_guard = default_sonic_guard);

// Linear-interpolation refinement of the shock position inside the bracket
// cell.  Returns a value in [x_stop, sigma_r]; falls back to sigma_r when the
// bracket is degenerate.
double refine_sigma_r(const IntegrationOutcome& outcome);

}  // namespace sphereflame
