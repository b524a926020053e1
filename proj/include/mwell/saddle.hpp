#ifndef MWELL_SADDLE_HPP
#define MWELL_SADDLE_HPP

#include "mwell/potential.hpp"
#include "mwell/wkb.hpp"

namespace mwell {

/// Saddle point data for a coherent state of amplitude alpha. Levels are
/// treated as a continuum with the harmonic energy rule; tau and S come from
/// the semiclassical table. The width prefactor g_n is set to one here, as
/// appropriate at the large level indexes where the saddle sits.
struct SaddleResult {
  double alpha_abs = 0;
  double omega = 0;
  double hbar = 1;
  double n0 = 0;          // real saddle level index: n0 = |alpha|^2 exp(2 omega tau0)
  double tau0 = 0;        // barrier time at n0
  double tau0_prime = 0;  // d tau / dn at n0
  cplx n1;                // first order response 2 i omega / (1 - 2 omega n0 tau0')
  double S0 = 0;          // action at n0
  cplx f0;                // exponent at the burst center (t = 0 value)
  double f0_pp = 0;       // second derivative, negative
  double dt_width = 0;    // 1 / (sqrt|f''0| n0 |n1|), the burst 1/e half-width
  double dP = 0;          // leaked probability per oscillation
  double j_peak = 0;      // burst height
  double burst_offset = 0;  // arg(alpha)/omega; bursts sit at this time mod period
  bool width_flagged = false;  // omega dt_width >= 0.5: expansion unreliable
};

/// Solve the real saddle condition and assemble the burst quantities.
/// The damped fixed-point iteration n <- n + (F(n) - n)/2 runs first; if an
/// iterate leaves the table range or the iteration stalls, a bracketed
/// root-finder on n - F(n) takes over. Only when no root exists inside the
/// tabulated band does the solve fail with SaddleDiverged.
SaddleResult solve_saddle(cplx alpha, const Potential& pot, const SemiclassicalTable& table);

/// Gaussian burst approximation of the current near a burst center:
/// j(t) = j_peak exp(f''0 (n0 |n1|)^2 t^2), with t measured from the center.
/// Accurate for |omega t| well below one; |omega t| <= 0.5 is enforced softly
/// through the annotate flag in the result.
double burst_current(const SaddleResult& r, double t);

/// Current from the complex saddle at finite t: solves
/// n* = |alpha|^2 exp(2 omega (tau(n*) + i t)) with tau analytically
/// continued through the table interpolant, then evaluates the saddle-point
/// expression. Falls back on the trust region being exceeded is NOT silent:
/// raises ContinuationOutOfRange.
double full_saddle_current(cplx alpha, const Potential& pot, const SemiclassicalTable& table,
                           double t);

}  // namespace mwell

#endif
