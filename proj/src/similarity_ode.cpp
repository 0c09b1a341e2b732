#include "sphereflame/similarity_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphereflame/errors.hpp"

namespace sphereflame {

namespace {

// Shared by ode_rhs and the march so the two produce bitwise-equal updates.
OdeRhs rhs_given_c2(double x, double rho, double u, double c2) {
  const double rel = u - x;
  const double denom = x * (rel * rel - c2);
  return OdeRhs{-2.0 * u * rel * rho / denom, 2.0 * c2 * u / denom};
}

double squared_sound_speed(double rho, double gamma_u, double s1) {
  return gamma_u * s1 * std::pow(rho, gamma_u - 1.0);
}

}  // namespace

OdeRhs ode_rhs(double x, double rho, double u, const GasModel& m, double s1) {
  if (!(x > 0.0)) throw std::domain_error("x must be positive");
  if (!(rho > 0.0)) throw std::domain_error("rho must be positive");
  if (!(s1 > 0.0)) throw std::domain_error("s1 must be positive");

  const double c2 = squared_sound_speed(rho, m.gamma_u, s1);
  const double rel = u - x;
  if (std::abs(rel * rel - c2) <= default_sonic_guard * c2) {
    const double margin = u + std::sqrt(c2) - x;
    throw sonic_singularity_error(x, margin, "similarity ODE is sonic at this point");
  }
  return rhs_given_c2(x, rho, u, c2);
}

IntegrationOutcome integrate_intermediate(const PrecursorData& pre, const GasModel& m,
                                          std::size_t n_cells, double sonic_guard) {
  check_model(m);
  if (n_cells < 10) throw std::domain_error("grid needs at least 10 cells");
  if (n_cells > max_grid_cells)
    throw std::domain_error("grid size exceeds the in-memory profile guard");
  if (!(pre.sigma_p > 0.0)) throw std::domain_error("sigma_p must be positive");
  if (!(pre.s1 > 0.0)) throw std::domain_error("s1 must be positive");
  if (!(pre.w1.rho > 0.0)) throw std::domain_error("rho behind the precursor must be positive");

  const double g = m.gamma_u;
  const double s1 = pre.s1;
  const double dx = pre.sigma_p / static_cast<double>(n_cells);

  IntermediateProfile prof;  // filled highest x first, reversed at the end
  prof.s1 = s1;
  const std::size_t reserve = std::min<std::size_t>(n_cells + 1, std::size_t{1} << 20);
  prof.x.reserve(reserve);
  prof.rho.reserve(reserve);
  prof.u.reserve(reserve);
  prof.p.reserve(reserve);
  prof.sonic_margin.reserve(reserve);

  double x = pre.sigma_p;  // interior nodes sit at n * dx
  double rho = pre.w1.rho;
  double u = pre.w1.u;
  double c2 = squared_sound_speed(rho, g, s1);
  double p = s1 * std::pow(rho, g);

  auto push_node = [&] {
    prof.x.push_back(x);
    prof.rho.push_back(rho);
    prof.u.push_back(u);
    prof.p.push_back(p);
    prof.sonic_margin.push_back(u + std::sqrt(c2) - x);
  };

  double fr = reactive_residual(x, GasState{rho, u, p, false}, m);
  if (!(fr > 0.0))
    throw std::invalid_argument(
        "reactive-shock residual is not positive at the precursor; no flame can "
        "bring this flow to rest");
  push_node();

  IntegrationOutcome out;
  out.dx = dx;
  bool found = false;

  for (std::size_t n = n_cells; n-- > 0;) {
    // Abort instead of stepping across (or into) the sonic line, where the
    // denominator of the right-hand side changes sign.
    const double rel = u - x;
    if (!(rel * rel - c2 < -sonic_guard * c2)) {
      throw sonic_singularity_error(x, u + std::sqrt(c2) - x,
                                    "sonic guard tripped before the residual sign change");
    }
    const OdeRhs rhs = rhs_given_c2(x, rho, u, c2);
    rho = rho - dx * rhs.drho_dx;
    u = u - dx * rhs.du_dx;
    x = static_cast<double>(n) * dx;

    if (!(rho > 0.0))
      throw nonphysical_state_error("density driven non-positive during the march");
    if (!(x - u > 0.0))
      throw no_root_error(
          "flow caught up with the similarity coordinate before a residual sign change");

    c2 = squared_sound_speed(rho, g, s1);
    p = s1 * std::pow(rho, g);
    push_node();

    const double fr_here = reactive_residual(x, GasState{rho, u, p, false}, m);
    if (fr_here <= 0.0) {
      out.n_stop = n;
      out.fr_bracket = {fr_here, fr};
      out.w_stop = GasState{rho, u, p, false};
      found = true;
      break;
    }
    fr = fr_here;
  }
  if (!found)
    throw no_root_error("reactive-shock residual never changed sign on the grid");

  // Drop the stopping node: the profile covers [sigma_r, sigma_p] with
  // sigma_r the node just above the sign change.
  prof.x.pop_back();
  prof.rho.pop_back();
  prof.u.pop_back();
  prof.p.pop_back();
  prof.sonic_margin.pop_back();
  std::reverse(prof.x.begin(), prof.x.end());
  std::reverse(prof.rho.begin(), prof.rho.end());
  std::reverse(prof.u.begin(), prof.u.end());
  std::reverse(prof.p.begin(), prof.p.end());
  std::reverse(prof.sonic_margin.begin(), prof.sonic_margin.end());

  out.sigma_r = prof.x.front();
  out.w2 = GasState{prof.rho.front(), prof.u.front(), prof.p.front(), false};
  out.profile = std::move(prof);
  return out;
}

double refine_sigma_r(const IntegrationOutcome& outcome) {
  const double f0 = outcome.fr_bracket.first;   // at x_stop, <= 0
  const double f1 = outcome.fr_bracket.second;  // at sigma_r, > 0
  if (f0 == f1) return outcome.sigma_r;
  const double x_stop = outcome.sigma_r - outcome.dx;
  return x_stop + (0.0 - f0) / (f1 - f0) * outcome.dx;
}

}  // namespace sphereflame
