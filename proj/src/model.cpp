#include "qosc/model.hpp"

namespace qosc {

void SystemParams::validate() const {
  if (!(m > 0.0)) throw std::domain_error("params: m must be positive");
  if (!(omega > 0.0)) throw std::domain_error("params: omega must be positive");
  if (!(gamma >= 0.0)) throw std::domain_error("params: gamma must be nonnegative");
  if (!(ell > 0.0)) throw std::domain_error("params: ell must be positive");
  if (!(lambda_cut > omega))
    throw std::domain_error("params: cutoff must exceed omega");
  // sigma < omega^2 - gamma^2 keeps both normal-mode frequencies real and the
  // weak-damping condition gamma < omega_- intact.
  if (!(std::abs(sigma) < omega * omega - gamma * gamma))
    throw std::domain_error("params: |sigma| must be below omega^2 - gamma^2");
}

double renormalized_frequency(double omega_bare_sq, double gamma, double lambda_cut) {
  double shift = 4.0 * gamma * lambda_cut / 3.14159265358979323846;
  double result = omega_bare_sq - shift;
  if (!(result > 0.0))
    throw std::domain_error("renormalized_frequency: omega^2 <= 0 after cutoff shift");
  return std::sqrt(result);
}

ModeView mode_view(const SystemParams& p, Branch branch) {
  p.validate();
  ModeView v;
  v.branch = branch;
  double sign = (branch == Branch::plus) ? 1.0 : -1.0;
  double w2 = p.omega * p.omega + sign * p.sigma;
  if (!(w2 > 0.0)) throw std::domain_error("mode_view: omega_pm^2 <= 0");
  double res2 = w2 - p.gamma * p.gamma;
  if (!(res2 > 0.0)) throw std::domain_error("mode_view: Omega_pm^2 <= 0");
  v.omega_mode = std::sqrt(w2);
  v.resonance = std::sqrt(res2);
  v.weight = (branch == Branch::plus) ? 0.5 : 2.0;
  return v;
}

StabilityFlags stability_check(const SystemParams& p) {
  p.validate();
  StabilityFlags f;
  double w2p = p.omega * p.omega + p.sigma;
  double w2m = p.omega * p.omega - p.sigma;
  f.stable_plus = 2.0 * p.gamma < w2p * p.ell;
  f.stable_minus = 2.0 * p.gamma < w2m * p.ell;
  return f;
}

RegimeReport classify_regime(const SystemParams& p) {
  p.validate();
  if (!(p.gamma > 0.0))
    throw std::domain_error("classify_regime: varsigma undefined at gamma = 0");
  RegimeReport r;
  r.varsigma = p.sigma * p.ell / (2.0 * p.gamma);
  if (r.varsigma > 1.0 + kRegimeMargin)
    r.regime = Regime::direct_dominated;
  else if (r.varsigma < 1.0 - kRegimeMargin)
    r.regime = Regime::induced_dominated;
  else
    r.regime = Regime::crossover;
  StabilityFlags f = stability_check(p);
  r.stable_plus = f.stable_plus;
  r.stable_minus = f.stable_minus;
  double w2m = p.omega * p.omega - p.sigma;
  r.zero_sep_validity_time = 1.0 / (p.gamma * w2m * p.ell * p.ell);
  return r;
}

}  // namespace qosc
