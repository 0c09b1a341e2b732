// Ideal-gas states and the two-phase mixture model.
//
// Fresh (unburnt) mixture and burnt products are both calorically perfect,
// each with its own adiabatic exponent and molar mass (combustion changes
// the mole count, so the products are heavier per mole).  The entropy
// surrogate p / rho^gamma_u is what stays constant along the smooth flow
// between the precursor shock and the flame.
#pragma once

namespace sphereflame {

// Primitive state (density, radial velocity, pressure) plus phase tag.
struct GasState {
  double rho = 0.0;  // kg m^-3
  double u = 0.0;    // m s^-1
  double p = 0.0;    // Pa
  bool burnt = false;
};

// Mixture description and the ambient reference state ahead of everything.
struct GasModel {
  double gamma_u = 1.4;  // adiabatic exponent, fresh mixture
  double gamma_b = 1.4;  // adiabatic exponent, burnt products
  double q = 0.0;        // heat release per unit mass of mixture, J kg^-1
  double w_mix = 0.0;    // molar mass of the fresh mixture, kg mol^-1
  double w_burnt = 0.0;  // molar mass of the burnt products, kg mol^-1
  double r_gas = 8.314;  // molar gas constant, J mol^-1 K^-1
  GasState w0;           // ambient state: at rest, unburnt

  double gamma_of(const GasState& s) const { return s.burnt ? gamma_b : gamma_u; }
  double molar_mass_of(const GasState& s) const { return s.burnt ? w_burnt : w_mix; }
};

// Local sound speed sqrt(gamma p / rho); gamma picked by the phase tag.
double sound_speed(const GasState& s, const GasModel& m);

// Entropy surrogate p / rho^gamma_u.
double entropy(const GasState& s, const GasModel& m);

// Ideal-gas temperature p W / (rho R); molar mass picked by the phase tag.
double temperature(const GasState& s, const GasModel& m);

// Specific internal energy p / ((gamma - 1) rho); gamma by phase tag.
double internal_energy(const GasState& s, const GasModel& m);

// Stoichiometric hydrogen-air mixture, 2 H2 + O2 + 4 N2 per 7 mol fresh
// (2 H2O + 4 N2 per 6 mol burnt), at the given ambient pressure (Pa) and
// temperature (K).
GasModel hydrogen_air_mixture(double p0, double t0);

// Throws std::domain_error when the model violates its basic requirements
// (exponents above one, positive molar mass, ambient state at rest, ...).
void check_model(const GasModel& m);

}  // namespace sphereflame
