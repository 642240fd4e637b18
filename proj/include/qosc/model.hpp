#ifndef QOSC_MODEL_HPP
#define QOSC_MODEL_HPP

#include <cmath>
#include <stdexcept>

namespace qosc {

// Sentinel for beta meaning zero temperature (beta = infinity).
inline constexpr double kBetaInfinite = -1.0;

// Full physical configuration in natural units (hbar = c = 1).
// gamma = e^2 / 8 pi m is the per-oscillator damping from the field bath.
struct SystemParams {
  double m = 1.0;           // oscillator mass
  double omega = 1.0;       // renormalized frequency
  double gamma = 0.05;      // bath-oscillator damping constant
  double sigma = 0.0;       // direct inter-oscillator coupling (frequency^2)
  double ell = 1.0;         // detector separation (light-crossing delay)
  double lambda_cut = 1e3;  // UV cutoff
  double beta = kBetaInfinite;  // inverse temperature; <= 0 means T = 0

  bool zero_temperature() const { return beta <= 0.0; }
  void validate() const;
};

enum class Branch { plus, minus };

// Per-normal-mode derived quantities.  The CoM mode (plus) carries weight
// c = 1/2, the relative mode (minus) c = 2, matching chi+ = (chi1+chi2)/2,
// chi- = chi1 - chi2.
struct ModeView {
  Branch branch = Branch::plus;
  double omega_mode = 0.0;  // omega_pm = sqrt(omega^2 +- sigma)
  double resonance = 0.0;   // Omega_pm = sqrt(omega_pm^2 - gamma^2)
  double weight = 0.5;      // c_pm

  double mode_sign() const { return branch == Branch::plus ? 1.0 : -1.0; }
};

enum class Regime { direct_dominated, crossover, induced_dominated };

struct RegimeReport {
  double varsigma = 0.0;  // sigma * ell / (2 gamma)
  Regime regime = Regime::crossover;
  bool stable_plus = true;
  bool stable_minus = true;
  double zero_sep_validity_time = 0.0;  // (gamma omega_-^2 ell^2)^-1
};

// Band half-width on varsigma for the crossover label.
inline constexpr double kRegimeMargin = 0.1;

// omega = sqrt(omega_bare^2 - 4 gamma Lambda / pi).  Throws if the shifted
// omega^2 is non-positive (unphysical renormalized frequency).
double renormalized_frequency(double omega_bare_sq, double gamma, double lambda_cut);

ModeView mode_view(const SystemParams& p, Branch branch);

// Branch pm is unstable iff 2 gamma > omega_pm^2 ell; the boundary itself is
// classified unstable (W_smooth^2 = 0 there).
struct StabilityFlags {
  bool stable_plus = true;
  bool stable_minus = true;
  bool both() const { return stable_plus && stable_minus; }
};
StabilityFlags stability_check(const SystemParams& p);

RegimeReport classify_regime(const SystemParams& p);

}  // namespace qosc

#endif  // QOSC_MODEL_HPP
