#include "sphereflame/gas.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sphereflame {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0))
    throw std::domain_error(std::string(name) + " must be positive");
}

}  // namespace

double sound_speed(const GasState& s, const GasModel& m) {
  require_positive(s.rho, "rho");
  require_positive(s.p, "p");
  return std::sqrt(m.gamma_of(s) * s.p / s.rho);
}

double entropy(const GasState& s, const GasModel& m) {
  require_positive(s.rho, "rho");
  return s.p / std::pow(s.rho, m.gamma_u);
}

double temperature(const GasState& s, const GasModel& m) {
  require_positive(s.rho, "rho");
  return s.p * m.molar_mass_of(s) / (s.rho * m.r_gas);
}

double internal_energy(const GasState& s, const GasModel& m) {
  require_positive(s.rho, "rho");
  return s.p / ((m.gamma_of(s) - 1.0) * s.rho);
}

GasModel hydrogen_air_mixture(double p0, double t0) {
  require_positive(p0, "p0");
  require_positive(t0, "t0");

  // Per 7 mol of mixture: 2 mol H2, 1 mol O2, 4 mol N2.
  const double w_h2 = 0.002;  // kg mol^-1
  const double w_o2 = 0.032;
  const double w_n2 = 0.028;
  const double w_total = 2.0 * w_h2 + w_o2 + 4.0 * w_n2;
  const double y_h2 = 2.0 * w_h2 / w_total;  // mass fractions
  const double y_o2 = w_o2 / w_total;

  GasModel m;
  m.gamma_u = 1.4;
  m.gamma_b = 1.4;
  // Heat release per unit mass of mixture: only the reacting fraction
  // (hydrogen plus oxygen) contributes; the nitrogen is ballast.
  m.q = (y_h2 + y_o2) * 1.3255e7;
  m.w_mix = w_total / 7.0;
  // Same mass, one mole fewer: 2 H2O + 4 N2 behind the flame.
  m.w_burnt = w_total / 6.0;
  m.r_gas = 8.314;
  m.w0.rho = p0 * m.w_mix / (m.r_gas * t0);
  m.w0.u = 0.0;
  m.w0.p = p0;
  m.w0.burnt = false;
  return m;
}

void check_model(const GasModel& m) {
  if (!(m.gamma_u > 1.0) || !(m.gamma_b > 1.0))
    throw std::domain_error("adiabatic exponents must exceed one");
  if (!(m.q >= 0.0)) throw std::domain_error("heat release must be non-negative");
  require_positive(m.w_mix, "w_mix");
  require_positive(m.w_burnt, "w_burnt");
  require_positive(m.r_gas, "r_gas");
  require_positive(m.w0.rho, "ambient rho");
  require_positive(m.w0.p, "ambient p");
  if (m.w0.u != 0.0) throw std::domain_error("ambient state must be at rest");
  if (m.w0.burnt) throw std::domain_error("ambient state must be unburnt");
}

}  // namespace sphereflame
