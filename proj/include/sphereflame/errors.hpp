// Error types thrown by the spherical flame flow solver.
//
// Plain precondition violations (non-positive density, Mach number not above
// one, ...) use std::domain_error directly; the types below mark failures of
// the numerical construction itself so callers can tell them apart.
#pragma once

#include <stdexcept>
#include <string>

namespace sphereflame {

// The similarity ODE became (numerically) sonic: |u - x| approached the local
// sound speed, where the right-hand side blows up.  Carries the position and
// the sonic margin u + c - x at the failure point.
class sonic_singularity_error : public std::runtime_error {
 public:
  sonic_singularity_error(double x, double sonic_margin, const std::string& what)
      : std::runtime_error(what), x_(x), sonic_margin_(sonic_margin) {}
  double x() const noexcept { return x_; }
  double sonic_margin() const noexcept { return sonic_margin_; }

 private:
  double x_;
  double sonic_margin_;
};

// The inward march exhausted its grid without a sign change of the
// reactive-shock residual.
class no_root_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A jump relation produced a state with non-positive pressure or density.
class nonphysical_state_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure of the outer secant iteration on the precursor Mach number.
class secant_error : public std::runtime_error {
 public:
  enum class reason { stagnation, max_iterations, mach_floor };
  secant_error(reason why, const std::string& what)
      : std::runtime_error(what), why_(why) {}
  reason why() const noexcept { return why_; }

 private:
  reason why_;
};

}  // namespace sphereflame
