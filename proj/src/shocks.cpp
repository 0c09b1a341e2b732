#include "sphereflame/shocks.hpp"

#include <cmath>
#include <stdexcept>

#include "sphereflame/errors.hpp"

namespace sphereflame {

PrecursorData precursor_state(const GasModel& m, double mach) {
  if (!(mach > 1.0)) throw std::domain_error("precursor Mach number must exceed one");

  const double g = m.gamma_u;
  const double c0 = sound_speed(m.w0, m);

  PrecursorData pre;
  pre.mach = mach;
  pre.sigma_p = mach * c0;
  // Density jump across a normal shock; the velocity and pressure jumps then
  // follow from the mass and momentum conservation through the front.
  pre.w1.rho = (g + 1.0) / (g - 1.0 + 2.0 / (mach * mach)) * m.w0.rho;
  pre.w1.u = (1.0 - m.w0.rho / pre.w1.rho) * pre.sigma_p;
  pre.w1.p = m.w0.p + (1.0 - m.w0.rho / pre.w1.rho) * m.w0.rho * pre.sigma_p * pre.sigma_p;
  pre.w1.burnt = false;
  pre.c1 = sound_speed(pre.w1, m);
  pre.s1 = entropy(pre.w1, m);
  return pre;
}

double reactive_residual(double x, const GasState& s, const GasModel& m) {
  if (!(x - s.u > 0.0))
    throw std::domain_error("reactive shock must outrun the fresh gas (x > u)");
  if (!(s.rho > 0.0)) throw std::domain_error("rho must be positive");

  const double gu = m.gamma_u;
  const double gb = m.gamma_b;
  return 0.5 * s.u * s.u + x * s.u / (gb - 1.0) +
         (gu / (gu - 1.0) - gb / (gb - 1.0) * x / (x - s.u)) * s.p / s.rho + m.q;
}

GasState burnt_state(const GasState& w2, double sigma_r, const GasModel& m) {
  (void)m;
  if (!(sigma_r - w2.u > 0.0))
    throw std::domain_error("reactive shock must outrun the fresh gas (sigma_r > u2)");
  if (!(w2.rho > 0.0)) throw std::domain_error("rho must be positive");

  GasState wb;
  wb.rho = w2.rho * (sigma_r - w2.u) / sigma_r;
  wb.u = 0.0;
  wb.p = w2.p - w2.rho * w2.u * (sigma_r - w2.u);
  wb.burnt = true;
  if (!(wb.p > 0.0))
    throw nonphysical_state_error("burnt pressure is non-positive");
  return wb;
}

double reactive_energy_residual(const GasState& w2, const GasState& wb,
                                double sigma_r, const GasModel& m) {
  // In the shock frame the burnt side moves at -sigma_r and the fresh side at
  // u2 - sigma_r.  Total enthalpy is conserved through the front once the
  // burnt side is charged with the released heat.
  const double burnt_side =
      0.5 * sigma_r * sigma_r + internal_energy(wb, m) - m.q + wb.p / wb.rho;
  const double fresh_side = 0.5 * (sigma_r - w2.u) * (sigma_r - w2.u) +
                            internal_energy(w2, m) + w2.p / w2.rho;
  return burnt_side - fresh_side;
}

}  // namespace sphereflame
