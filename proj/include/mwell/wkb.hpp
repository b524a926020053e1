#ifndef MWELL_WKB_HPP
#define MWELL_WKB_HPP

#include <functional>
#include <vector>

#include "mwell/numerics.hpp"
#include "mwell/potential.hpp"

namespace mwell {

/// Barrier action integral of sqrt(2m(V - E)) between the inner turning
/// points a and b, with square-root endpoint regularization.
double action(const Potential& pot, double E, int nodes = 64);

/// Full classical oscillation time in the well at energy E.
double classical_period(const Potential& pot, double E, int nodes = 64);

/// Barrier traversal time, the integral of m / sqrt(2m(V - E)) over (a, b).
/// Equals -dS/dE. Diverges logarithmically at the barrier top; energies above
/// 0.95 of the smoothed maximum are rejected.
double barrier_time(const Potential& pot, double E, int nodes = 64);

/// Kernel versions over an arbitrary potential profile and explicit turning
/// points (unit tests use these with barriers that PotentialSpec cannot
/// express, e.g. rectangular ones).
double action_between(const std::function<double(double)>& v, double E, double a, double b,
                      double mass, int nodes = 64);
double period_between(const std::function<double(double)>& v, double E, double c, double a,
                      double mass, int nodes = 64);
double barrier_time_between(const std::function<double(double)>& v, double E, double a, double b,
                            double mass, int nodes = 64);

/// Sub-leading width prefactor for low-lying levels, computed in log space.
/// Monotone increasing toward 1; g(0) ~ 0.93.
double g_factor(double n);

/// Semiclassical width of level n with the harmonic energy rule
/// E_n = hbar omega (n + 1/2):  Gamma_n = exp(-2 S_n / hbar) / (g_n t_n).
/// Pass use_g_factor = false for the plain 1 / t_n normalization.
double wkb_width(const Potential& pot, int n, bool use_g_factor = true, int nodes = 64);

/// Breit-Wigner normalization of continuum states near the resonance at E_n
/// (validation only).
double breit_wigner_norm(double E, double E_n, double t_n, double S_n, double mass = 1.0,
                         double hbar = 1.0);

/// Bound on hbar from the linear turning point condition
/// hbar << sqrt(m) V'^2 / |V''|^(3/2) evaluated at x.
double linear_tp_bound(const Potential& pot, double x);

/// Tabulated S(E), t(E), tau(E) with cubic interpolants, for saddle point
/// work and fast evaluation. Spans (0.05 V_b, 0.95 V_top) where V_top is the
/// smoothed barrier maximum (the Hermite blend cuts the kink below V_b).
class SemiclassicalTable {
 public:
  SemiclassicalTable(const Potential& pot, int samples = 181, int nodes = 64);

  double E_lo() const { return E_lo_; }
  double E_hi() const { return E_hi_; }
  double action_at(double E) const;
  double period_at(double E) const;
  double barrier_time_at(double E) const;
  /// d tau / dE by a centered difference with step 1e-4 V_b on the interpolant.
  double barrier_time_deriv(double E) const;

  /// Analytic continuation of the interpolants to complex energy. Valid while
  /// |Im E| stays below 20 percent of the table span; beyond that raises
  /// ContinuationOutOfRange.
  cplx action_at(cplx E) const;
  cplx barrier_time_at(cplx E) const;
  cplx barrier_time_deriv(cplx E) const;

  /// True when hbar exceeds 10 percent of the linear turning point bound
  /// anywhere in the table (the result is then advisory rather than reliable).
  bool linear_tp_warning() const { return warn_; }

  const std::vector<double>& energies() const { return E_; }

 private:
  void check_trust(cplx E) const;
  double E_lo_, E_hi_, V_b_, deriv_step_;
  bool warn_ = false;
  std::vector<double> E_;
  CubicSpline S_, t_, tau_;
};

}  // namespace mwell

#endif
