#include "sphereflame/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphereflame/gas.hpp"
#include "sphereflame/similarity_ode.hpp"

namespace sphereflame {

namespace {

// Locale-independent decimal text, 12 significant digits.
std::string fmt12(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

const char* branch_name(SolveBranch b) {
  switch (b) {
    case SolveBranch::shocked: return "shocked";
    case SolveBranch::shocked_refined: return "shocked-refined";
    case SolveBranch::weak_precursor: return "weak-precursor";
  }
  return "?";
}

LogLevel log_level_from_env() {
  const char* v = std::getenv("SPHEREFLAME_LOG");
  if (v == nullptr) return LogLevel::info;
  const std::string s(v);
  if (s == "quiet") return LogLevel::quiet;
  if (s == "debug") return LogLevel::debug;
  return LogLevel::info;
}

void log_info(LogLevel level, const std::string& msg) {
  if (level != LogLevel::quiet) std::cerr << msg << '\n';
}

void log_debug(LogLevel level, const std::string& msg) {
  if (level == LogLevel::debug) std::cerr << msg << '\n';
}

// Reported reactive shock position: the grid node, or on request the
// bracket-interpolated refinement.  Weak-family solutions (M_p = 1) have a
// shot position with no bracket cell below it; they report it unchanged.
double reported_sigma_r(const Solution& sol, bool refine) {
  if (refine && sol.m_p > 1.0) return refine_sigma_r(sol.outcome);
  return sol.react.sigma_r;
}

void print_state_row(std::ostream& os, const char* name, const GasState& s) {
  os << std::left << std::setw(12) << name << std::setw(20) << fmt12(s.rho)
     << std::setw(20) << fmt12(s.u) << fmt12(s.p) << '\n';
}

// Human-readable block for one solution; `trace` is present in flame-speed
// mode only.
void print_solution(std::ostream& os, const Solution& sol, const SecantTrace* trace,
                    bool refine) {
  os << "M_p: " << fmt12(sol.m_p) << '\n';
  os << "sigma_p: " << fmt12(sol.sigma_p) << " m/s\n";
  os << "sigma_r: " << fmt12(reported_sigma_r(sol, refine)) << " m/s\n";
  os << "u_f: " << fmt12(flame_speed_of(sol)) << " m/s\n";
  if (trace != nullptr) {
    os << "branch: " << branch_name(trace->branch) << '\n';
    os << "iterations: " << trace->iterates.size() << '\n';
    os << "final |G|: " << fmt12(trace->final_abs_g) << " m/s\n";
  }
  os << '\n'
     << std::left << std::setw(12) << "state" << std::setw(20) << "rho (kg/m^3)"
     << std::setw(20) << "u (m/s)" << "p (Pa)" << '\n';
  print_state_row(os, "ambient", sol.model.w0);
  print_state_row(os, "post-shock", sol.prec.w1);
  print_state_row(os, "pre-flame", sol.react.w2);
  print_state_row(os, "burnt", sol.react.wb);
  os << "T_b: " << fmt12(temperature(sol.react.wb, sol.model)) << " K\n";
}

void print_sweep_entry(std::ostream& os, const SweepEntry& e) {
  os << "uf=" << fmt12(e.u_f_target) << ": ";
  if (!e.ok) {
    os << "FAILED (" << e.error << ")\n";
    return;
  }
  os << "branch=" << branch_name(e.trace.branch) << " M_p=" << fmt12(e.solution.m_p)
     << " sigma_r=" << fmt12(e.solution.react.sigma_r)
     << " u2=" << fmt12(e.solution.react.w2.u)
     << " T_b=" << fmt12(temperature(e.solution.react.wb, e.solution.model)) << '\n';
}

void dump_trace(LogLevel level, const SecantTrace& trace) {
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    log_debug(level, "  k=" + std::to_string(k) + " M=" + fmt12(trace.iterates[k].m) +
                         " G=" + fmt12(trace.iterates[k].g));
  }
}

// Default radial grid for --out: 601 evenly spaced radii from the origin to
// 20% past the precursor position at the sampling time.
std::vector<double> default_radii(const Solution& sol, double t) {
  const double r_max = 1.2 * sol.sigma_p * t;
  std::vector<double> r;
  r.reserve(601);
  for (int i = 0; i <= 600; ++i) r.push_back(r_max * static_cast<double>(i) / 600.0);
  return r;
}

void emit_outputs(const Solution& sol, const RunConfig& cfg, LogLevel level) {
  if (!cfg.states_out.empty()) {
    write_states_table({sol}, cfg.states_out, cfg.refine_shock_position);
    log_info(level, "wrote states table: " + cfg.states_out + " (1 row)");
  }
  if (!cfg.profile_out.empty()) {
    const ProfileTable table =
        sample_solution(sol, cfg.sample_time, default_radii(sol, cfg.sample_time));
    write_profile_csv(table, cfg.profile_out);
    log_info(level, "wrote radial profile: " + cfg.profile_out + " (" +
                        std::to_string(table.size()) + " rows)");
  }
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  std::string mode_str;

  CLI::App app{
      "Self-similar flow of a spherical flame expanding at constant speed:\n"
      "precursor shock, intermediate zone, reactive shock, burnt core.",
      "sphereflame"};
  app.add_option("--mode", mode_str, "Run mode: mach | flame-speed | sweep")
      ->required()
      ->check(CLI::IsMember({"mach", "flame-speed", "sweep"}));
  app.add_option("--mach", cfg.mach, "Precursor shock Mach number (> 1), mode mach");
  app.add_option("--uf", cfg.u_f, "Flame speed target in m/s (> 0), mode flame-speed");
  app.add_option("--uf-list", cfg.u_f_list,
                 "Comma-separated flame speed targets in m/s, mode sweep")
      ->delimiter(',');
  app.add_option("--n", cfg.n_cells, "Grid cells for the inward march (>= 10)")
      ->capture_default_str();
  app.add_option("--p0", cfg.p0, "Ambient pressure in Pa")->capture_default_str();
  app.add_option("--t0", cfg.t0, "Ambient temperature in K")->capture_default_str();
  app.add_option("--sample-time", cfg.sample_time,
                 "Physical time in s at which --out samples the radial profile")
      ->capture_default_str();
  app.add_option("--out", cfg.profile_out,
                 "Radial profile CSV path (modes mach and flame-speed)");
  app.add_option("--states-out", cfg.states_out, "States table CSV path");
  app.add_flag("--refine-sigma-r", cfg.refine_shock_position,
               "Report the bracket-interpolated reactive shock position");
  app.add_option("--max-iter", cfg.solver.max_iter, "Secant iteration cap")
      ->capture_default_str();
  app.add_option("--m0", cfg.solver.m0, "First secant iterate")->capture_default_str();
  app.add_option("--delta", cfg.solver.delta, "Second secant iterate offset")
      ->capture_default_str();
  app.add_option("--epsilon", cfg.solver.epsilon, "|G| tolerance in m/s")
      ->capture_default_str();
  app.set_config("--config", "",
                 "Flat key = value file with # comments; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);  // unknown keys reject

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("sphereflame");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw help_requested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw usage_error(std::string(e.what()) + "\n\n" + app.help());
  }

  const bool has_mach = app.count("--mach") > 0;
  const bool has_uf = app.count("--uf") > 0;
  const bool has_list = app.count("--uf-list") > 0;

  if (mode_str == "mach") {
    cfg.mode = RunMode::mach;
    if (!has_mach) throw usage_error("--mode mach requires --mach");
    if (has_uf || has_list)
      throw usage_error("--mode mach conflicts with --uf / --uf-list");
    if (!(cfg.mach > 1.0))
      throw usage_error("the precursor Mach number must exceed 1");
  } else if (mode_str == "flame-speed") {
    cfg.mode = RunMode::flame_speed;
    if (!has_uf) throw usage_error("--mode flame-speed requires --uf");
    if (has_mach || has_list)
      throw usage_error("--mode flame-speed conflicts with --mach / --uf-list");
    if (!(cfg.u_f > 0.0)) throw usage_error("the flame speed target must be positive");
  } else {
    cfg.mode = RunMode::sweep;
    if (!has_list || cfg.u_f_list.empty())
      throw usage_error("--mode sweep requires a non-empty --uf-list");
    if (has_mach || has_uf)
      throw usage_error("--mode sweep conflicts with --mach / --uf");
    for (double v : cfg.u_f_list)
      if (!(v > 0.0)) throw usage_error("every flame speed target must be positive");
    if (!cfg.profile_out.empty())
      throw usage_error(
          "radial profile output needs a single solution; use --mode mach or "
          "flame-speed");
  }

  if (cfg.n_cells < 10) throw usage_error("--n must be at least 10");
  if (cfg.n_cells > max_grid_cells)
    throw usage_error("--n exceeds the in-memory profile guard");
  if (!(cfg.p0 > 0.0)) throw usage_error("--p0 must be positive");
  if (!(cfg.t0 > 0.0)) throw usage_error("--t0 must be positive");
  if (!cfg.profile_out.empty() && !(cfg.sample_time > 0.0))
    throw usage_error("--sample-time must be positive when --out is requested");
  if (!(cfg.solver.m0 > 1.0)) throw usage_error("--m0 must exceed 1");
  if (!(cfg.solver.delta > 0.0)) throw usage_error("--delta must be positive");
  if (!(cfg.solver.epsilon > 0.0)) throw usage_error("--epsilon must be positive");
  if (cfg.solver.max_iter < 1) throw usage_error("--max-iter must be at least 1");
  return cfg;
}

ProfileTable sample_solution(const Solution& sol, double t,
                             const std::vector<double>& r_grid) {
  if (!(t > 0.0)) throw std::domain_error("sample time must be positive");
  const IntermediateProfile& prof = sol.outcome.profile;
  const std::vector<double>& xs = prof.x;

  ProfileTable table;
  table.reserve(r_grid.size());
  for (double r : r_grid) {
    if (!(r >= 0.0)) throw std::domain_error("radii must be non-negative");
    const double x = r / t;
    ProfileRow row;
    row.r = r;
    if (x < sol.react.sigma_r) {
      row.rho = sol.react.wb.rho;
      row.u = sol.react.wb.u;
      row.p = sol.react.wb.p;
    } else if (x > sol.sigma_p) {
      row.rho = sol.model.w0.rho;
      row.u = sol.model.w0.u;
      row.p = sol.model.w0.p;
    } else {
      // Intermediate zone: linear interpolation between stored nodes.
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
      if (hi >= xs.size()) {
        row.rho = prof.rho.back();
        row.u = prof.u.back();
        row.p = prof.p.back();
      } else if (hi == 0) {
        row.rho = prof.rho.front();
        row.u = prof.u.front();
        row.p = prof.p.front();
      } else {
        const std::size_t lo = hi - 1;
        const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
        row.rho = prof.rho[lo] + w * (prof.rho[hi] - prof.rho[lo]);
        row.u = prof.u[lo] + w * (prof.u[hi] - prof.u[lo]);
        row.p = prof.p[lo] + w * (prof.p[hi] - prof.p[lo]);
      }
    }
    table.push_back(row);
  }
  return table;
}

void write_profile_csv(const ProfileTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "r,rho,u,p\n";
  for (const ProfileRow& row : table)
    out << fmt12(row.r) << ',' << fmt12(row.rho) << ',' << fmt12(row.u) << ','
        << fmt12(row.p) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_states_table(const std::vector<Solution>& solutions, const std::string& path,
                        bool refine_shock_position) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "uf,M_p,sigma_p,sigma_r,rho1,u1,p1,rho2,u2,p2,rho_b,p_b,T_b\n";
  for (const Solution& sol : solutions) {
    const GasState& w1 = sol.prec.w1;
    const GasState& w2 = sol.react.w2;
    const GasState& wb = sol.react.wb;
    out << fmt12(flame_speed_of(sol)) << ',' << fmt12(sol.m_p) << ','
        << fmt12(sol.sigma_p) << ',' << fmt12(reported_sigma_r(sol, refine_shock_position))
        << ',' << fmt12(w1.rho) << ',' << fmt12(w1.u) << ',' << fmt12(w1.p) << ','
        << fmt12(w2.rho) << ',' << fmt12(w2.u) << ',' << fmt12(w2.p) << ','
        << fmt12(wb.rho) << ',' << fmt12(wb.p) << ','
        << fmt12(temperature(wb, sol.model)) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  try {
    cfg = parse_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const help_requested& h) {
    std::cout << h.text;
    return exit_success;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage_error;
  }

  const LogLevel level = log_level_from_env();
  const std::string grid_note = " on a " + std::to_string(cfg.n_cells) + "-cell grid";
  try {
    const GasModel model = hydrogen_air_mixture(cfg.p0, cfg.t0);
    switch (cfg.mode) {
      case RunMode::mach: {
        log_info(level, "solving precursor Mach " + fmt12(cfg.mach) + grid_note);
        const Solution sol =
            solve_given_mach(model, cfg.mach, cfg.n_cells, cfg.solver.sonic_guard);
        print_solution(std::cout, sol, nullptr, cfg.refine_shock_position);
        emit_outputs(sol, cfg, level);
        return exit_success;
      }
      case RunMode::flame_speed: {
        log_info(level,
                 "solving flame-speed target " + fmt12(cfg.u_f) + " m/s" + grid_note);
        const FlameSpeedSolve r =
            solve_given_flame_speed(model, cfg.u_f, cfg.n_cells, cfg.solver);
        dump_trace(level, r.trace);
        log_info(level, "done: branch=" + std::string(branch_name(r.trace.branch)) +
                            " iterations=" + std::to_string(r.trace.iterates.size()));
        print_solution(std::cout, r.solution, &r.trace, cfg.refine_shock_position);
        emit_outputs(r.solution, cfg, level);
        return exit_success;
      }
      case RunMode::sweep: {
        log_info(level, "sweeping " + std::to_string(cfg.u_f_list.size()) +
                            " flame-speed targets" + grid_note);
        const SweepResult sw =
            sweep_flame_speeds(model, cfg.u_f_list, cfg.n_cells, cfg.solver);
        std::vector<Solution> converged;
        std::size_t n_ok = 0;
        for (const SweepEntry& e : sw.entries) {
          print_sweep_entry(std::cout, e);
          if (e.ok) {
            dump_trace(level, e.trace);
            converged.push_back(e.solution);
            ++n_ok;
          } else {
            log_info(level,
                     "warning: target " + fmt12(e.u_f_target) + " m/s failed: " + e.error);
          }
        }
        log_info(level, "done: " + std::to_string(n_ok) + "/" +
                            std::to_string(sw.entries.size()) + " targets converged");
        if (!cfg.states_out.empty()) {
          write_states_table(converged, cfg.states_out, cfg.refine_shock_position);
          log_info(level, "wrote states table: " + cfg.states_out + " (" +
                              std::to_string(converged.size()) + " rows)");
        }
        return sw.all_converged ? exit_success : exit_solver_failure;
      }
    }
    return exit_solver_failure;  // unreachable
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_solver_failure;
  }
}

}  // namespace sphereflame
