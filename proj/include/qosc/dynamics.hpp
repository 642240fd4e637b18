#ifndef QOSC_DYNAMICS_HPP
#define QOSC_DYNAMICS_HPP

#include <vector>

#include "qosc/model.hpp"
#include "qosc/specfun.hpp"

namespace qosc {

enum class PoleMethod { perturbative, numeric, lambert, asymptotic };

struct PoleSet {
  Complex dominant = 0.0;       // upper-half-plane member of the conjugate pair
  Complex dominant_conj = 0.0;  // its mirror
  std::vector<Complex> ladder;  // large-n poles, if requested
  PoleMethod method = PoleMethod::perturbative;
  double residual_norm = 0.0;  // max |g_tilde(s*)| over reported poles
};

struct EffectiveParams {
  double Gamma = 0.0;        // gamma [1 +- sin(omega_pm ell)/(omega_pm ell)]
  double W = 0.0;            // omega_pm [1 -+ (gamma/omega_pm) cos(..)/(omega_pm ell)]
  double W_sq_smooth = 0.0;  // omega^2 +- sigma -+ 2 gamma / ell
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> chi;
  std::vector<double> chi_dot;
  Branch mode = Branch::plus;
  bool blew_up = false;  // amplitude exceeded 1e6x the initial scale
};

enum class DelayModel {
  full,           // retarded term (2 gamma/ell) chi(t - ell) for t >= ell
  none,           // private-bath damped oscillator (diagnostic)
  zero_sep_limit  // ell -> 0 expansion: extra 2 gamma chi_dot -+ (2 gamma/ell) chi
};

// Laplace-domain characteristic function g_pm(s) and its derivative.
Complex g_tilde(const ModeView& mode, Complex s, const SystemParams& p);
Complex g_tilde_prime(const ModeView& mode, Complex s, const SystemParams& p);

// Spectral propagator d2_bar(kappa) = 1 / g_tilde(-i kappa).  Throws when
// |g_tilde| < 1e-14 (pole on the integration axis, marginal stability).
Complex d2_bar(const ModeView& mode, double kappa, const SystemParams& p);

// Dominant conjugate pole pair to first order in gamma/(omega_pm^2 ell).
PoleSet dominant_pole_perturbative(const ModeView& mode, const SystemParams& p);

// Newton refinement of a seed; |g| <= 1e-12 max(omega_pm^2, |s|^2) on return.
Complex find_poles_numeric(const ModeView& mode, const SystemParams& p, Complex seed);

// Real (plus mode) or complex (minus mode) root of the strong-damping reduced
// equation 2 gamma ell y + omega_pm^2 ell^2 -+ 2 gamma ell e^{-y} = 0 via
// Lambert W; s = y/ell.  has_real_root is false for the minus mode.
struct StrongDampingRoot {
  Complex s = 0.0;
  double y = 0.0;  // real part kept for the plus mode
  bool has_real_root = false;
};
StrongDampingRoot strong_damping_root(const ModeView& mode, const SystemParams& p);

// Large-n pole ladder y_n = u_n + i v_n, refined by Newton per n.
PoleSet asymptotic_pole_ladder(const ModeView& mode, const SystemParams& p,
                               int n_min, int n_max);

EffectiveParams effective_parameters(const ModeView& mode, const SystemParams& p);

// Partial sum (through 'order') of the delay expansion of d2_bar.
Complex d2_series(const ModeView& mode, double kappa, int order,
                  const SystemParams& p);

// Homogeneous delay dynamics by the method of steps: fixed-step RK4 inside
// each ell-interval with cubic-Hermite history lookups.
Trajectory simulate_transient(const SystemParams& p, const ModeView& mode,
                              double chi0, double v0, double t_max, double dt,
                              DelayModel delay = DelayModel::full);

}  // namespace qosc

#endif  // QOSC_DYNAMICS_HPP
