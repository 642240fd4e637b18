#ifndef QOSC_ANALYSIS_HPP
#define QOSC_ANALYSIS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qosc/covariance.hpp"
#include "qosc/entanglement.hpp"
#include "qosc/model.hpp"

namespace qosc {

enum class SeparationKind { ell_gt, ell_lt, ell_cross };
enum class SeparationMethod {
  numeric_root,
  large_sep_formula,
  small_sep_formula,
  iterated,
  lambert_closed
};

struct CriticalSeparation {
  double value = 0.0;
  SeparationKind kind = SeparationKind::ell_lt;
  SeparationMethod method = SeparationMethod::numeric_root;
  double eta_residual = 0.0;  // |eta_lt^2(value) - 1/4|
  bool exists = true;         // false when the formula predicts no crossing
  bool within_stable = true;  // 2 gamma < omega_-^2 value
  bool within_validity = true;  // formula used inside its declared regime
  bool converged = true;
};

// eta_lt^2 at separation ell; quiet NaN when the configuration is unstable.
double eta_sq_of_ell(SystemParams params, double ell,
                     MomentMethod method = MomentMethod::closed_form);

// All roots of eta_lt^2(ell) = 1/4 inside [bracket_lo, bracket_hi], found by
// a 400-samples-per-decade log scan plus bisection; each refined until
// |eta^2 - 1/4| <= 1e-10.  A single root is labeled ell_lt; with two roots
// the larger is ell_gt.
std::vector<CriticalSeparation> critical_separation_numeric(
    const SystemParams& params, double bracket_lo, double bracket_hi,
    MomentMethod method = MomentMethod::closed_form);

// Default bracket [2 gamma / omega_-^2 * 1.01, 1e3 / omega].
std::vector<CriticalSeparation> critical_separation_numeric(
    const SystemParams& params, MomentMethod method = MomentMethod::closed_form);

// Large-separation closed form ell_gt = sqrt(4 beta_c / (1 - 4 alpha_c)) from
// the gamma-expansions of the asymptotic eta_lt^2 ~ alpha_c + beta_c/ell^2.
// (The _c suffix keeps these clear of beta, the inverse temperature.)
CriticalSeparation ell_gt_large_sep(const SystemParams& params);

// Small-separation form: leading ell_gt^(0) plus the O(gamma/omega_+)
// correction built from the a0,a1,b0,b1,c0,c1 coefficients, with ln(Lambda l)
// frozen at ell_gt^(0).
CriticalSeparation ell_gt_small_sep(const SystemParams& params);

// Fixed-point iteration of the varsigma < 1 closed form, seeded at
// 2 gamma / omega_-^2 * 1.5.
CriticalSeparation ell_lt_iterated(const SystemParams& params, int n_iter = 60);

// Negligible-direct-coupling limit: first fixed-point iteration and the
// equivalent Lambert W(-1) closed form.
struct WeakCouplingSeparation {
  CriticalSeparation first_iteration;
  CriticalSeparation lambert_closed;
};
WeakCouplingSeparation ell_lt_weak_coupling(double omega, double lambda_cut);

// Maximum damping compatible with large-separation entanglement.
struct GammaBound {
  double exact = 0.0;
  double small_sigma = 0.0;
};
GammaBound gamma_upper_bound(double omega, double sigma, double lambda_cut);

// eta_lt^2(ell -> infinity, gamma -> 0) = (1/4) sqrt((w^2-s)/(w^2+s)).
double eta_sq_asymptote(double omega, double sigma);

// ---- parameter sweep ----

struct SweepAxis {
  std::string name;  // one of gamma, sigma, ell, lambda_cut, beta
  std::vector<double> values;
};

struct SweepPoint {
  SystemParams params;
  double ell_used = 0.0;  // equals params.ell, or the numeric ell_lt when
                          // no ell was specified (critical-separation surface)
  double eta_sq = 0.0;
  double negativity = 0.0;
  EtaBranch branch = EtaBranch::degenerate;
  bool stable_plus = true;
  bool stable_minus = true;
  Regime regime = Regime::crossover;
  bool valid = false;  // false rows carry sentinels, never fabricated values
};

struct SweepResult {
  std::vector<SweepAxis> axes;
  std::vector<SweepPoint> points;  // row-major, last axis fastest
  bool ell_from_critical = false;
};

SweepResult sweep(const SystemParams& base, const std::vector<SweepAxis>& axes,
                  bool ell_specified);

void write_sweep_csv(const SweepResult& r, std::ostream& os);
std::string sweep_to_json(const SweepResult& r);

}  // namespace qosc

#endif  // QOSC_ANALYSIS_HPP
