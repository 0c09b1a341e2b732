#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphereflame/cli.hpp"
#include "sphereflame/gas.hpp"
#include "sphereflame/solver.hpp"

using namespace sphereflame;

namespace {

GasModel air() { return hydrogen_air_mixture(1.0e5, 283.0); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<double> split_fields(const std::string& line) {
  std::vector<double> fields;
  std::istringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) fields.push_back(std::stod(cell));
  return fields;
}

}  // namespace

TEST_CASE("parse_config applies the documented defaults") {
  RunConfig cfg = parse_config({"--mode", "flame-speed", "--uf", "32"});
  CHECK(cfg.mode == RunMode::flame_speed);
  CHECK(cfg.u_f == 32.0);
  CHECK(cfg.mixture == "hydrogen-air-stoichiometric");
  CHECK(cfg.p0 == 1.0e5);
  CHECK(cfg.t0 == 283.0);
  CHECK(cfg.n_cells == 5000);
  CHECK(cfg.sample_time == 1e-3);
  CHECK(cfg.solver.m0 == 1.0001);
  CHECK(cfg.solver.delta == 1e-3);
  CHECK(cfg.solver.epsilon == 1e-5);
  CHECK(cfg.solver.max_iter == 100);
  CHECK(cfg.profile_out.empty());
  CHECK(cfg.states_out.empty());
  CHECK_FALSE(cfg.refine_shock_position);
}

TEST_CASE("parse_config reads every flag") {
  RunConfig cfg = parse_config({"--mode", "mach", "--mach", "1.2", "--n", "777",
                                "--p0", "2e5", "--t0", "300", "--m0", "1.3",
                                "--delta", "0.01", "--epsilon", "1e-7", "--max-iter",
                                "12", "--refine-sigma-r", "--out", "prof.csv",
                                "--sample-time", "0.5", "--states-out", "st.csv"});
  CHECK(cfg.mode == RunMode::mach);
  CHECK(cfg.mach == 1.2);
  CHECK(cfg.n_cells == 777);
  CHECK(cfg.p0 == 2e5);
  CHECK(cfg.t0 == 300.0);
  CHECK(cfg.solver.m0 == 1.3);
  CHECK(cfg.solver.delta == 0.01);
  CHECK(cfg.solver.epsilon == 1e-7);
  CHECK(cfg.solver.max_iter == 12);
  CHECK(cfg.refine_shock_position);
  CHECK(cfg.profile_out == "prof.csv");
  CHECK(cfg.sample_time == 0.5);
  CHECK(cfg.states_out == "st.csv");
}

TEST_CASE("parse_config splits a comma-separated sweep list") {
  RunConfig cfg = parse_config({"--mode", "sweep", "--uf-list", "4,8.5,12"});
  CHECK(cfg.mode == RunMode::sweep);
  REQUIRE(cfg.u_f_list.size() == 3);
  CHECK(cfg.u_f_list[0] == 4.0);
  CHECK(cfg.u_f_list[1] == 8.5);
  CHECK(cfg.u_f_list[2] == 12.0);
}

TEST_CASE("parse_config rejects malformed command lines") {
  CHECK_THROWS_AS(parse_config({}), usage_error);  // no mode at all
  CHECK_THROWS_AS(parse_config({"--mode", "warp"}), usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "mach", "--mach", "1.2", "--frobnicate"}),
                  usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "mach"}), usage_error);  // value missing
  CHECK_THROWS_AS(parse_config({"--mode", "flame-speed"}), usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "sweep"}), usage_error);
  // Conflicting mode/value combinations.
  CHECK_THROWS_AS(parse_config({"--mode", "mach", "--mach", "1.2", "--uf", "4"}),
                  usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "flame-speed", "--uf", "4", "--mach", "1.2"}),
                  usage_error);
  CHECK_THROWS_AS(
      parse_config({"--mode", "sweep", "--uf-list", "4,8", "--uf", "4"}),
      usage_error);
  // Range checks surfaced as usage errors.
  CHECK_THROWS_AS(parse_config({"--mode", "mach", "--mach", "0.9"}), usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "mach", "--mach", "1.0"}), usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "flame-speed", "--uf", "-1"}), usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "sweep", "--uf-list", "4,0"}), usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "flame-speed", "--uf", "4", "--n", "5"}),
                  usage_error);
  CHECK_THROWS_AS(
      parse_config({"--mode", "flame-speed", "--uf", "4", "--epsilon", "0"}),
      usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "flame-speed", "--uf", "4", "--m0", "1.0"}),
                  usage_error);
  CHECK_THROWS_AS(
      parse_config({"--mode", "flame-speed", "--uf", "4", "--p0", "-1e5"}),
      usage_error);
  // Radial output needs one solution and a positive sampling time.
  CHECK_THROWS_AS(
      parse_config({"--mode", "sweep", "--uf-list", "4,8", "--out", "prof.csv"}),
      usage_error);
  CHECK_THROWS_AS(parse_config({"--mode", "mach", "--mach", "1.2", "--out", "p.csv",
                                "--sample-time", "0"}),
                  usage_error);
}

TEST_CASE("parse_config serves help on request") {
  try {
    parse_config({"--help"});
    FAIL("expected help_requested");
  } catch (const help_requested& h) {
    CHECK(h.text.find("--mode") != std::string::npos);
    CHECK(h.text.find("--uf-list") != std::string::npos);
  }
}

TEST_CASE("parse_config reads a config file and lets flags override it") {
  const std::string path = "test_cli_config.txt";
  {
    std::ofstream out(path);
    out << "# run setup\n"
        << "mode = flame-speed\n"
        << "uf = 17\n"
        << "n = 2000\n"
        << "refine-sigma-r = true\n";
  }
  RunConfig cfg = parse_config({"--config", path});
  CHECK(cfg.mode == RunMode::flame_speed);
  CHECK(cfg.u_f == 17.0);
  CHECK(cfg.n_cells == 2000);
  CHECK(cfg.refine_shock_position);

  RunConfig overridden = parse_config({"--config", path, "--uf", "4"});
  CHECK(overridden.u_f == 4.0);       // flag wins
  CHECK(overridden.n_cells == 2000);  // file value survives elsewhere

  CHECK_THROWS_AS(parse_config({"--config", "no_such_config_file.txt"}), usage_error);

  {
    std::ofstream out(path);
    out << "mode = flame-speed\nuf = 17\nunknown-key = 3\n";
  }
  CHECK_THROWS_AS(parse_config({"--config", path}), usage_error);
}

TEST_CASE("sample_solution evaluates the piecewise solution exactly at the seams") {
  GasModel m = air();
  Solution sol = solve_given_mach(m, 1.09, 2000);
  const double sr = sol.react.sigma_r;
  const double sp = sol.sigma_p;

  // Sampling at t = 1 makes x == r with no rounding.
  ProfileTable t = sample_solution(
      sol, 1.0, {0.0, 0.5 * sr, sr * (1.0 - 1e-12), sr, sp, sp * (1.0 + 1e-12), 2.0 * sp});

  // Burnt core, including just below the reactive shock.
  for (int i : {0, 1, 2}) {
    CHECK(t[i].rho == sol.react.wb.rho);
    CHECK(t[i].u == sol.react.wb.u);
    CHECK(t[i].p == sol.react.wb.p);
  }
  // At the shock the fresh side of the jump is reported.
  CHECK(t[3].rho == sol.react.w2.rho);
  CHECK(t[3].u == sol.react.w2.u);
  CHECK(t[3].p == sol.react.w2.p);
  // At the precursor: the post-shock state; beyond it: untouched atmosphere.
  CHECK(t[4].rho == sol.prec.w1.rho);
  CHECK(t[4].u == sol.prec.w1.u);
  CHECK(t[4].p == sol.prec.w1.p);
  for (int i : {5, 6}) {
    CHECK(t[i].rho == m.w0.rho);
    CHECK(t[i].u == 0.0);
    CHECK(t[i].p == m.w0.p);
  }
}

TEST_CASE("sample_solution interpolates linearly between stored nodes") {
  GasModel m = air();
  Solution sol = solve_given_mach(m, 1.09, 500);
  const IntermediateProfile& prof = sol.outcome.profile;
  REQUIRE(prof.size() > 10);
  const std::size_t lo = 5, hi = 6;
  const double x = 0.5 * (prof.x[lo] + prof.x[hi]);
  ProfileTable t = sample_solution(sol, 1.0, {x});
  const double w = (x - prof.x[lo]) / (prof.x[hi] - prof.x[lo]);
  CHECK(t[0].rho == prof.rho[lo] + w * (prof.rho[hi] - prof.rho[lo]));
  CHECK(t[0].u == prof.u[lo] + w * (prof.u[hi] - prof.u[lo]));
  CHECK(t[0].p == prof.p[lo] + w * (prof.p[hi] - prof.p[lo]));
}

TEST_CASE("sampled intermediate profiles decrease outward") {
  GasModel m = air();
  FlameSpeedSolve r = solve_given_flame_speed(m, 32.0, 2000);
  const Solution& sol = r.solution;
  // Dense radii across the intermediate zone, endpoints exact.
  std::vector<double> radii;
  const double a = sol.react.sigma_r, b = sol.sigma_p;
  radii.push_back(a);
  for (int i = 1; i < 400; ++i)
    radii.push_back(a + (b - a) * static_cast<double>(i) / 400.0);
  radii.push_back(b);
  ProfileTable t = sample_solution(sol, 1.0, radii);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    CHECK(t[i].rho >= t[i + 1].rho);
    CHECK(t[i].u >= t[i + 1].u);
    CHECK(t[i].p >= t[i + 1].p);
  }
  // And they straddle the stored endpoint states.
  CHECK(t.front().rho == sol.react.w2.rho);
  CHECK(t.back().rho == sol.prec.w1.rho);
}

TEST_CASE("sample_solution covers the weak family too") {
  GasModel m = air();
  Solution sol = solve_weak_precursor(m, 4.0, 2000);
  ProfileTable t = sample_solution(
      sol, 2.0, {0.0, 2.0 * sol.react.sigma_r, 2.0 * sol.sigma_p, 3.0 * sol.sigma_p});
  CHECK(t[0].rho == sol.react.wb.rho);
  CHECK(t[1].rho == sol.react.w2.rho);  // x = sigma_r exactly after r/t
  CHECK(t[2].u == 0.0);                 // acoustic edge carries the ambient state
  CHECK(t[2].rho == m.w0.rho);
  CHECK(t[3].rho == m.w0.rho);
}

TEST_CASE("sample_solution validates its inputs") {
  GasModel m = air();
  Solution sol = solve_given_mach(m, 1.09, 200);
  CHECK_THROWS_AS(sample_solution(sol, 0.0, {1.0}), std::domain_error);
  CHECK_THROWS_AS(sample_solution(sol, -1.0, {1.0}), std::domain_error);
  CHECK_THROWS_AS(sample_solution(sol, 1.0, {-0.5}), std::domain_error);
}

TEST_CASE("profile CSV: header, twelve significant digits, trailing newline") {
  const std::string path = "test_cli_profile.csv";
  write_profile_csv({}, path);
  CHECK(slurp(path) == "r,rho,u,p\n");

  ProfileTable table;
  table.push_back({1.0 / 3.0, 0.898601666517507, 1e-7, 123456.789012});
  table.push_back({0.0, 1.0, 0.0, 1e5});
  write_profile_csv(table, path);
  const std::string text = slurp(path);
  CHECK(text.back() == '\n');
  std::vector<std::string> lines = split_lines(text);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "r,rho,u,p");
  std::vector<double> row = split_fields(lines[1]);
  REQUIRE(row.size() == 4);
  CHECK(row[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  CHECK(row[1] == doctest::Approx(0.898601666517507).epsilon(1e-11));
  CHECK(row[2] == doctest::Approx(1e-7).epsilon(1e-11));
  CHECK(row[3] == doctest::Approx(123456.789012).epsilon(1e-11));
  // Period decimal separator, no locale surprises.
  CHECK(text.find(',') != std::string::npos);
  CHECK(text.find(';') == std::string::npos);

  CHECK_THROWS_AS(write_profile_csv(table, "no_such_dir/x.csv"), std::runtime_error);
}

TEST_CASE("states table: header, one row per solution, refinement option") {
  GasModel m = air();
  Solution a = solve_given_mach(m, 1.05, 2000);
  Solution b = solve_given_mach(m, 1.09, 2000);
  const std::string path = "test_cli_states.csv";

  write_states_table({a, b}, path);
  std::vector<std::string> lines = split_lines(slurp(path));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "uf,M_p,sigma_p,sigma_r,rho1,u1,p1,rho2,u2,p2,rho_b,p_b,T_b");
  std::vector<double> row = split_fields(lines[1]);
  REQUIRE(row.size() == 13);
  CHECK(row[0] == doctest::Approx(flame_speed_of(a)).epsilon(1e-11));
  CHECK(row[1] == doctest::Approx(1.05).epsilon(1e-11));
  CHECK(row[3] == doctest::Approx(a.react.sigma_r).epsilon(1e-11));
  CHECK(row[8] == doctest::Approx(a.react.w2.u).epsilon(1e-11));
  CHECK(row[12] == doctest::Approx(temperature(a.react.wb, m)).epsilon(1e-11));

  // The refinement option moves sigma_r inward by less than one cell and
  // leaves every other column alone.
  write_states_table({a}, path, true);
  std::vector<double> refined = split_fields(split_lines(slurp(path))[1]);
  CHECK(refined[3] <= row[3]);
  CHECK(refined[3] > row[3] - 1.01 * a.outcome.dx);
  CHECK(refined[0] == row[0]);
  CHECK(refined[8] == row[8]);

  // Weak-family rows keep their shot position under the option.
  Solution w = solve_weak_precursor(m, 4.0, 2000);
  write_states_table({w}, path, true);
  std::vector<double> weak_row = split_fields(split_lines(slurp(path))[1]);
  CHECK(weak_row[3] == doctest::Approx(w.react.sigma_r).epsilon(1e-11));
  CHECK(weak_row[1] == 1.0);
}
