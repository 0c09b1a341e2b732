#include "sphereflame/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "sphereflame/errors.hpp"

namespace sphereflame {

namespace {

// Weak-branch tuning.  The shooting residual rho_end - rho0 is smooth in
// sigma_r (slope ~ -0.07 per metre per second for hydrogen-air), so a plain
// secant from the empirical seed window converges in under ten shots.
constexpr double fade_fraction = 1e-7;  // u has faded below this fraction of u2
constexpr double overrun_factor = 1.2;  // a shot past this multiple of c0 is lost
constexpr double shoot_tol = 1e-12;     // |rho_end - rho0| target, kg m^-3
constexpr std::size_t shoot_max_iter = 80;
constexpr double seed_low = 9.0;   // sigma_r seeds as multiples of u_f
constexpr double seed_high = 9.3;

// Pre-shock density on the ambient adiabat for which a reactive shock at
// sigma_r brings the flow to rest: the residual's closed-form root in rho.
double weak_rho2(const GasModel& m, double s0, double sigma_r, double u_f) {
  const double gu = m.gamma_u;
  const double gb = m.gamma_b;
  const double u2 = sigma_r - u_f;
  const double coeff = gu / (gu - 1.0) - gb / (gb - 1.0) * (sigma_r / u_f);
  if (!(coeff < 0.0))
    throw std::domain_error("weak branch needs sigma_r well above u_f");
  const double rest = 0.5 * u2 * u2 + sigma_r * u2 / (gu - 1.0) + m.q;
  return std::pow(rest / (-coeff * s0), 1.0 / (gu - 1.0));
}

struct FadeOutcome {
  double rho_end = 0.0;
  bool ok = false;
};

// Explicit Euler march outward from the candidate reactive shock until the
// velocity fades (or the trajectory punches into its sonic wall, which on the
// discrete grid amounts to the same terminal density up to one cell).
FadeOutcome fade_march(const GasModel& m, double s0, double c0, double sigma_r,
                       double u_f, std::size_t n_cells) {
  const double g = m.gamma_u;
  const double dx = c0 / static_cast<double>(n_cells);
  double x = sigma_r;
  double u = sigma_r - u_f;
  double rho = weak_rho2(m, s0, sigma_r, u_f);
  const double u_stop = u * fade_fraction;
  const std::size_t cap = 4 * n_cells;
  for (std::size_t k = 0; k < cap; ++k) {
    const double c2 = g * s0 * std::pow(rho, g - 1.0);
    const double rel = u - x;
    const double rel2 = rel * rel - c2;
    if (rel2 >= 0.0) return {rho, true};
    const double den = x * rel2;
    rho += dx * (-2.0 * u * rel * rho / den);
    u += dx * (2.0 * c2 * u / den);
    x += dx;
    if (u <= u_stop) return {rho, true};
    if (x > overrun_factor * c0) return {0.0, false};
  }
  return {0.0, false};
}

// Shoot on sigma_r so the faded flow lands exactly on the ambient density.
double shoot_sigma_r(const GasModel& m, double s0, double c0, double u_f,
                     std::size_t n_cells) {
  const double rho0 = m.w0.rho;
  auto residual = [&](double sr) {
    const FadeOutcome f = fade_march(m, s0, c0, sr, u_f, n_cells);
    if (!f.ok)
      throw secant_error(secant_error::reason::stagnation,
                         "weak-branch shot ran off the grid without fading");
    return f.rho_end - rho0;
  };
  double a = seed_low * u_f;
  double b = seed_high * u_f;
  double fa = residual(a);
  if (std::abs(fa) <= shoot_tol) return a;
  double fb = residual(b);
  if (std::abs(fb) <= shoot_tol) return b;
  for (std::size_t k = 0; k < shoot_max_iter; ++k) {
    if (fb == fa)
      throw secant_error(secant_error::reason::stagnation,
                         "weak-branch shooting stagnated");
    const double c = b - fb * (b - a) / (fb - fa);
    if (!(c > u_f))
      throw secant_error(secant_error::reason::stagnation,
                         "weak-branch shooting left the admissible range");
    const double fc = residual(c);
    a = b;
    fa = fb;
    b = c;
    fb = fc;
    if (std::abs(fc) <= shoot_tol) return c;
  }
  throw secant_error(secant_error::reason::max_iterations,
                     "weak-branch shooting did not converge");
}

}  // namespace

Solution solve_given_mach(const GasModel& m, double m_p, std::size_t n_cells,
                          double sonic_guard) {
  check_model(m);
  if (!(m_p > 1.0)) throw std::domain_error("precursor Mach number must exceed one");

  Solution sol;
  sol.model = m;
  sol.m_p = m_p;
  sol.prec = precursor_state(m, m_p);
  sol.sigma_p = sol.prec.sigma_p;
  sol.outcome = integrate_intermediate(sol.prec, m, n_cells, sonic_guard);
  sol.react.sigma_r = sol.outcome.sigma_r;
  sol.react.w2 = sol.outcome.w2;
  sol.react.wb = burnt_state(sol.outcome.w2, sol.outcome.sigma_r, m);
  sol.react.u_f = sol.outcome.sigma_r - sol.outcome.w2.u;
  sol.u_f = sol.react.u_f;
  return sol;
}

double flame_speed_of(const Solution& sol) {
  return sol.react.sigma_r - sol.react.w2.u;
}

double refined_flame_speed(const IntegrationOutcome& outcome) {
  const double sr_hat = refine_sigma_r(outcome);
  if (!(outcome.dx > 0.0)) return sr_hat - outcome.w2.u;
  const double x_stop = outcome.sigma_r - outcome.dx;
  const double t = (sr_hat - x_stop) / outcome.dx;
  const double u_hat = outcome.w_stop.u + t * (outcome.w2.u - outcome.w_stop.u);
  return sr_hat - u_hat;
}

Solution solve_weak_precursor(const GasModel& m, double u_f, std::size_t n_cells) {
  check_model(m);
  if (!(u_f > 0.0)) throw std::domain_error("u_f must be positive");
  if (n_cells < 10) throw std::domain_error("grid needs at least 10 cells");
  if (n_cells > max_grid_cells)
    throw std::domain_error("grid size exceeds the in-memory profile guard");

  const double s0 = entropy(m.w0, m);
  const double c0 = sound_speed(m.w0, m);
  const double sigma_r = shoot_sigma_r(m, s0, c0, u_f, n_cells);

  // Re-march the converged shot, this time recording the profile.
  const double g = m.gamma_u;
  const double dx = c0 / static_cast<double>(n_cells);
  double x = sigma_r;
  double u = sigma_r - u_f;
  double rho = weak_rho2(m, s0, sigma_r, u_f);
  double p = s0 * std::pow(rho, g);
  double c2 = g * s0 * std::pow(rho, g - 1.0);
  const double u_stop = u * fade_fraction;

  IntermediateProfile prof;
  prof.s1 = s0;
  auto push_node = [&] {
    prof.x.push_back(x);
    prof.rho.push_back(rho);
    prof.u.push_back(u);
    prof.p.push_back(p);
    prof.sonic_margin.push_back(u + std::sqrt(c2) - x);
  };
  push_node();
  const GasState w2{rho, u, p, false};

  const std::size_t cap = 4 * n_cells;
  for (std::size_t k = 0; k < cap; ++k) {
    const double rel = u - x;
    const double rel2 = rel * rel - c2;
    if (rel2 >= 0.0) break;
    const double den = x * rel2;
    rho += dx * (-2.0 * u * rel * rho / den);
    u += dx * (2.0 * c2 * u / den);
    x += dx;
    if (x >= c0) break;  // the exact acoustic edge closes the profile below
    c2 = g * s0 * std::pow(rho, g - 1.0);
    p = s0 * std::pow(rho, g);
    push_node();
    if (u <= u_stop) break;
  }
  // Terminal node: the ambient edge the trajectory tends to, where the
  // disturbance has died out entirely.
  x = c0;
  rho = m.w0.rho;
  u = 0.0;
  p = s0 * std::pow(rho, g);
  c2 = g * s0 * std::pow(rho, g - 1.0);
  push_node();

  Solution sol;
  sol.model = m;
  sol.m_p = 1.0;
  sol.sigma_p = c0;
  sol.prec.mach = 1.0;
  sol.prec.sigma_p = c0;
  sol.prec.w1 = m.w0;
  sol.prec.c1 = c0;
  sol.prec.s1 = s0;

  sol.outcome.sigma_r = sigma_r;
  sol.outcome.w2 = w2;
  sol.outcome.w_stop = w2;  // degenerate: no node below the shock
  sol.outcome.n_stop = 0;
  sol.outcome.dx = dx;
  const GasState w_next{prof.rho[1], prof.u[1], prof.p[1], false};
  sol.outcome.fr_bracket = {reactive_residual(sigma_r, w2, m),
                            reactive_residual(prof.x[1], w_next, m)};
  sol.outcome.profile = std::move(prof);

  sol.react.sigma_r = sigma_r;
  sol.react.w2 = w2;
  sol.react.wb = burnt_state(w2, sigma_r, m);
  sol.react.u_f = sigma_r - w2.u;
  sol.u_f = sol.react.u_f;
  return sol;
}

namespace {

// One Mach evaluation: full solution plus both objective readings.
struct Probe {
  Solution sol;
  double g_node = 0.0;
  double g_refined = 0.0;
};

}  // namespace

FlameSpeedSolve solve_given_flame_speed(const GasModel& m, double u_f_target,
                                        std::size_t n_cells, const SolverConfig& cfg) {
  check_model(m);
  if (!(u_f_target > 0.0)) throw std::domain_error("u_f target must be positive");
  if (!(cfg.m0 > 1.0)) throw std::domain_error("cfg.m0 must exceed one");
  if (!(cfg.delta > 0.0)) throw std::domain_error("cfg.delta must be positive");
  if (!(cfg.epsilon > 0.0)) throw std::domain_error("cfg.epsilon must be positive");

  const double eps = cfg.epsilon;
  SecantTrace trace;

  auto probe = [&](double mach) {
    Probe p;
    p.sol = solve_given_mach(m, mach, n_cells, cfg.sonic_guard);
    p.g_node = flame_speed_of(p.sol) - u_f_target;
    p.g_refined = refined_flame_speed(p.sol.outcome) - u_f_target;
    return p;
  };
  auto finish = [&](Probe&& p, SolveBranch branch, double abs_g) {
    trace.converged = true;
    trace.k_final = trace.iterates.empty() ? 0 : trace.iterates.size() - 1;
    trace.branch = branch;
    trace.final_abs_g = abs_g;
    return FlameSpeedSolve{std::move(p.sol), std::move(trace)};
  };
  auto go_weak = [&] {
    Probe pw;
    pw.sol = solve_weak_precursor(m, u_f_target, n_cells);
    const double res = std::abs(flame_speed_of(pw.sol) - u_f_target);
    return finish(std::move(pw), SolveBranch::weak_precursor, res);
  };

  // Stage one: the printed secant on the node-valued objective.  A sub-unity
  // iterate is clamped once; if even the clamped Mach overshoots the target,
  // the solution lives on the degenerate family instead.
  std::string stall_note;
  {
    Probe pa = probe(cfg.m0);
    trace.iterates.push_back({cfg.m0, pa.g_node});
    if (std::abs(pa.g_node) <= eps)
      return finish(std::move(pa), SolveBranch::shocked, std::abs(pa.g_node));
    Probe pb = probe(cfg.m0 + cfg.delta);
    trace.iterates.push_back({cfg.m0 + cfg.delta, pb.g_node});
    if (std::abs(pb.g_node) <= eps)
      return finish(std::move(pb), SolveBranch::shocked, std::abs(pb.g_node));

    double ma = cfg.m0, ga = pa.g_node;
    double mb = cfg.m0 + cfg.delta, gb = pb.g_node;
    bool clamped = false;
    for (std::size_t k = 0; k < cfg.max_iter; ++k) {
      if (gb == ga) {
        stall_note = "stagnated on identical objective values";
        break;
      }
      double mc = mb - gb * (mb - ma) / (gb - ga);
      if (mc <= 1.0) {
        if (clamped) {
          stall_note = "fell below Mach 1 repeatedly";
          break;
        }
        clamped = true;
        mc = mach_floor;
      }
      Probe pc = probe(mc);
      trace.iterates.push_back({mc, pc.g_node});
      if (mc == mach_floor && pc.g_node > eps) return go_weak();
      if (std::abs(pc.g_node) <= eps)
        return finish(std::move(pc), SolveBranch::shocked, std::abs(pc.g_node));
      ma = mb;
      ga = gb;
      mb = mc;
      gb = pc.g_node;
    }
    if (stall_note.empty()) stall_note = "exhausted its iteration budget";
  }

  // Stage two: retry on the refined objective, which stays continuous when
  // the stopping cell shifts, with a bisection safeguard once a sign change
  // is bracketed.  This is what rescues targets the node-valued objective
  // cannot meet at this grid size.
  {
    double lo = 0.0, hi = 0.0;  // tightest known g < 0 / g > 0 Mach numbers
    bool have_lo = false, have_hi = false;
    auto update_bracket = [&](double mach, double g) {
      if (g < 0.0 && (!have_lo || mach > lo)) {
        lo = mach;
        have_lo = true;
      }
      if (g > 0.0 && (!have_hi || mach < hi)) {
        hi = mach;
        have_hi = true;
      }
    };

    Probe pa = probe(cfg.m0);
    trace.iterates.push_back({cfg.m0, pa.g_refined});
    update_bracket(cfg.m0, pa.g_refined);
    if (std::abs(pa.g_refined) <= eps)
      return finish(std::move(pa), SolveBranch::shocked_refined, std::abs(pa.g_refined));
    Probe pb = probe(cfg.m0 + cfg.delta);
    trace.iterates.push_back({cfg.m0 + cfg.delta, pb.g_refined});
    update_bracket(cfg.m0 + cfg.delta, pb.g_refined);
    if (std::abs(pb.g_refined) <= eps)
      return finish(std::move(pb), SolveBranch::shocked_refined, std::abs(pb.g_refined));

    double ma = cfg.m0, ga = pa.g_refined;
    double mb = cfg.m0 + cfg.delta, gb = pb.g_refined;
    bool clamped = false;
    for (std::size_t k = 0; k < cfg.max_iter; ++k) {
      const bool have_bracket = have_lo && have_hi;
      double mc;
      if (gb == ga) {
        if (!have_bracket)
          throw secant_error(secant_error::reason::stagnation,
                             "secant stagnated with no sign change in sight");
        mc = 0.5 * (lo + hi);
      } else {
        mc = mb - gb * (mb - ma) / (gb - ga);
        if (have_bracket) {
          const double bl = std::min(lo, hi), bh = std::max(lo, hi);
          if (!(mc > bl && mc < bh)) mc = 0.5 * (lo + hi);
        } else if (mc <= 1.0) {
          if (clamped)
            throw secant_error(secant_error::reason::mach_floor,
                               "secant fell below Mach 1 repeatedly");
          clamped = true;
          mc = mach_floor;
        }
      }
      Probe pc = probe(mc);
      trace.iterates.push_back({mc, pc.g_refined});
      update_bracket(mc, pc.g_refined);
      if (mc == mach_floor && pc.g_refined > eps) return go_weak();
      if (std::abs(pc.g_refined) <= eps)
        return finish(std::move(pc), SolveBranch::shocked_refined, std::abs(pc.g_refined));
      ma = mb;
      ga = gb;
      mb = mc;
      gb = pc.g_refined;
    }
  }
  throw secant_error(
      secant_error::reason::max_iterations,
      "secant " + stall_note +
          " and the refined retry did not converge either; the grid is likely "
          "too coarse for the requested tolerance");
}

SweepResult sweep_flame_speeds(const GasModel& m, const std::vector<double>& u_f_values,
                               std::size_t n_cells, const SolverConfig& cfg) {
  check_model(m);
  if (u_f_values.empty()) throw std::domain_error("u_f list must be non-empty");
  for (double v : u_f_values)
    if (!(v > 0.0)) throw std::domain_error("every u_f target must be positive");

  SweepResult out;
  out.all_converged = true;
  out.entries.reserve(u_f_values.size());
  for (double target : u_f_values) {
    SweepEntry e;
    e.u_f_target = target;
    try {
      FlameSpeedSolve fs = solve_given_flame_speed(m, target, n_cells, cfg);
      e.ok = true;
      e.solution = std::move(fs.solution);
      e.trace = std::move(fs.trace);
    } catch (const std::exception& ex) {
      e.ok = false;
      e.error = ex.what();
      out.all_converged = false;
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace sphereflame
