// Jump relations for the two discontinuities bounding the intermediate zone:
// the inert precursor shock running into the ambient gas and the reactive
// shock (flame) that leaves the burnt core at rest behind it.
#pragma once

#include "sphereflame/gas.hpp"

namespace sphereflame {

// Post-precursor-shock state and derived quantities.
struct PrecursorData {
  double mach = 0.0;     // shock Mach number relative to the ambient sound speed
  double sigma_p = 0.0;  // shock speed, m s^-1
  GasState w1;           // state just behind the shock
  double c1 = 0.0;       // sound speed of w1
  double s1 = 0.0;       // entropy surrogate of w1, constant across the zone
};

// Reactive shock: speed, pre-shock state, burnt state, and the flame speed
// relative to the fresh gas just ahead of it.
struct ReactiveShockData {
  double sigma_r = 0.0;  // shock speed, m s^-1
  GasState w2;           // fresh state just ahead of the shock
  GasState wb;           // burnt state behind it (at rest)
  double u_f = 0.0;      // flame speed sigma_r - u2
};

// Normal-shock relations for the precursor moving at mach * c0 into the
// ambient state.  Requires mach > 1.
PrecursorData precursor_state(const GasModel& m, double mach);

// Residual of the reactive-shock condition for a candidate shock position x
// and fresh pre-shock state s.  A root in x is where a reactive shock moving
// at x can bring the gas to rest.  Requires x > s.u.
double reactive_residual(double x, const GasState& s, const GasModel& m);

// Burnt state behind a reactive shock of speed sigma_r eating the fresh state
// w2: at rest, density and pressure from the mass and momentum jumps.
// Requires sigma_r > w2.u; throws nonphysical_state_error if the pressure
// comes out non-positive.
GasState burnt_state(const GasState& w2, double sigma_r, const GasModel& m);

// Independent energy check on a reactive-shock triple: total enthalpy balance
// in the frame of the shock, counting the heat release on the burnt side.
// Vanishes exactly when (sigma_r, w2) is a root of reactive_residual and wb
// is the matching burnt state.
double reactive_energy_residual(const GasState& w2, const GasState& wb,
                                double sigma_r, const GasModel& m);

}  // namespace sphereflame
