#include "qosc/covariance.hpp"

#include <cmath>
#include <stdexcept>

#include "qosc/quadrature.hpp"

namespace qosc {

namespace {

using constants::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// [2 gamma kappa +- (2 gamma/ell) sin(kappa ell)] coth(beta kappa / 2),
// the fluctuation weight multiplying |d2_bar|^2; regular at kappa = 0 even
// for finite beta (the coth pole is split off analytically).
double fluct_weight(double kappa, double sign, const SystemParams& p) {
  double geom = kappa + sign * std::sin(kappa * p.ell) / p.ell;
  if (p.zero_temperature()) return 2.0 * p.gamma * geom;
  double x = 0.5 * p.beta * kappa;
  if (x > 20.0) return 2.0 * p.gamma * geom;
  if (x < 1e-4) {
    // coth x = 1/x + x/3 + O(x^3); the 1/x piece times geom stays finite
    double pole_part = (2.0 / p.beta) * (1.0 + sign * sinc(kappa * p.ell));
    return 2.0 * p.gamma * (pole_part + geom * x / 3.0);
  }
  return 2.0 * p.gamma * geom / std::tanh(x);
}

std::vector<double> oscillation_edges(double lo, double hi, double ell) {
  std::vector<double> edges;
  edges.push_back(lo);
  double step = pi / ell;
  double k = std::ceil(lo / step + 1e-12) * step;
  for (; k < hi - 1e-12 * hi; k += step) edges.push_back(k);
  edges.push_back(hi);
  return edges;
}

}  // namespace

double hadamard_kernel(double R, double kappa, double beta) {
  double coth = 1.0;
  if (beta > 0.0) {
    if (kappa == 0.0)
      throw std::domain_error("hadamard_kernel: coth pole at kappa = 0 for finite beta");
    coth = 1.0 / std::tanh(0.5 * beta * kappa);
  }
  if (R == 0.0) return kappa * coth / (4.0 * pi);
  return std::sin(kappa * R) / (4.0 * pi * R) * coth;
}

ModeMoments mode_moments_quadrature(const ModeView& mode, const SystemParams& p) {
  p.validate();
  StabilityFlags st = stability_check(p);
  if (!(mode.branch == Branch::plus ? st.stable_plus : st.stable_minus))
    throw std::domain_error("mode_moments_quadrature: unstable configuration");
  double sign = mode.mode_sign();

  auto chi_integrand = [&](double kappa) {
    return fluct_weight(kappa, sign, p) * std::norm(d2_bar(mode, kappa, p));
  };
  auto p_integrand = [&](double kappa) {
    return kappa * kappa * chi_integrand(kappa);
  };

  // Position: resolved region with panels pinned at n pi / ell, then
  // doubling blocks of the same panel structure until the tail is negligible.
  double k_res = std::max(50.0 * mode.omega_mode, 20.0 * pi / p.ell);
  double chi_total =
      integrate_split(chi_integrand, oscillation_edges(0.0, k_res, p.ell), 1e-14, 1e-11);
  double lo = k_res;
  for (int blk = 0; blk < 60; ++blk) {
    double hi = 2.0 * lo;
    double piece =
        integrate_split(chi_integrand, oscillation_edges(lo, hi, p.ell), 1e-14, 1e-9);
    chi_total += piece;
    if (std::abs(piece) < 1e-11 * std::abs(chi_total)) break;
    lo = hi;
    if (blk == 59)
      throw std::runtime_error("mode_moments_quadrature: position tail did not settle");
  }

  // Momentum: sharp cutoff at exactly Lambda.
  double p_total =
      integrate_split(p_integrand, oscillation_edges(0.0, p.lambda_cut, p.ell), 1e-13, 1e-11);

  ModeMoments mm;
  mm.method = MomentMethod::quadrature;
  mm.cutoff_used = p.lambda_cut;
  double c = mode.weight;
  mm.chi_sq = (2.0 * c / p.m) * chi_total / (2.0 * pi);
  mm.p_sq = (2.0 * c * p.m) * p_total / (2.0 * pi);
  if (!(mm.chi_sq > 0.0) || !(mm.p_sq > 0.0))
    throw std::runtime_error("mode_moments_quadrature: non-positive moment");
  return mm;
}

ModeMoments mode_moments_quadrature_first_order(const ModeView& mode,
                                                const SystemParams& p) {
  p.validate();
  if (!p.zero_temperature())
    throw std::domain_error("first-order quadrature path is zero-temperature only");
  double sign = mode.mode_sign();
  double w2 = mode.omega_mode * mode.omega_mode;

  auto d2_im = [&](double kappa) {
    Complex g0 = -kappa * kappa + Complex(0.0, -2.0 * p.gamma * kappa) + w2;
    Complex d2 = 1.0 / g0 + sign * (2.0 * p.gamma / p.ell) *
                                std::exp(Complex(0.0, kappa * p.ell)) / (g0 * g0);
    return d2.imag();
  };
  auto p_integrand = [&](double kappa) { return kappa * kappa * d2_im(kappa); };

  double k_res = std::max(50.0 * mode.omega_mode, 20.0 * pi / p.ell);
  double chi_total =
      integrate_split(d2_im, oscillation_edges(0.0, k_res, p.ell), 1e-14, 1e-11);
  double lo = k_res;
  for (int blk = 0; blk < 60; ++blk) {
    double hi = 2.0 * lo;
    double piece = integrate_split(d2_im, oscillation_edges(lo, hi, p.ell), 1e-14, 1e-9);
    chi_total += piece;
    if (std::abs(piece) < 1e-11 * std::abs(chi_total)) break;
    lo = hi;
  }
  double p_total =
      integrate_split(p_integrand, oscillation_edges(0.0, p.lambda_cut, p.ell), 1e-13, 1e-11);

  ModeMoments mm;
  mm.method = MomentMethod::quadrature;
  mm.cutoff_used = p.lambda_cut;
  double c = mode.weight;
  mm.chi_sq = (2.0 * c / p.m) * chi_total / (2.0 * pi);
  mm.p_sq = (2.0 * c * p.m) * p_total / (2.0 * pi);
  return mm;
}

std::pair<Complex, Complex> position_integrals_closed(const ModeView& mode,
                                                      const SystemParams& p) {
  if (!p.zero_temperature())
    throw std::domain_error("position_integrals_closed: beta must be infinite");
  if (!(p.gamma < mode.omega_mode))
    throw std::domain_error("position_integrals_closed: requires gamma < omega_pm");
  double Om = mode.resonance;
  double g = p.gamma;
  double l = p.ell;
  Complex I1 = Complex(0.0, 1.0 / Om) * arccot(g / Om);

  Complex zp = Complex(0.0, 1.0) * Complex(Om, -g) * l;   //  i (Om - i g) l
  Complex zm = Complex(0.0, -1.0) * Complex(Om, g) * l;   // -i (Om + i g) l
  Complex E1cal = pi - Complex(0.0, 1.0) * exp_integral_ei(-zp);
  Complex E2cal = pi + Complex(0.0, 1.0) * exp_integral_ei(-zm);

  double Om2 = Om * Om;
  Complex I2 = Complex(0.0, -g * g / (Om2 * (Om2 + g * g) * l)) +
               Complex(0.0, 1.0) * (1.0 - Complex(0.0, Om * l)) * g /
                   (2.0 * Om2 * Om * l) * std::exp(zp) * E1cal +
               Complex(0.0, 1.0) * (1.0 + Complex(0.0, Om * l)) * g /
                   (2.0 * Om2 * Om * l) * std::exp(zm) * E2cal;
  return {I1, I2};
}

std::pair<Complex, Complex> momentum_integrals_closed(const ModeView& mode,
                                                      const SystemParams& p) {
  if (!p.zero_temperature())
    throw std::domain_error("momentum_integrals_closed: beta must be infinite");
  if (!(p.gamma < mode.omega_mode))
    throw std::domain_error("momentum_integrals_closed: requires gamma < omega_pm");
  double Om = mode.resonance;
  double g = p.gamma;
  double l = p.ell;
  double L = p.lambda_cut;
  double Om2 = Om * Om;

  Complex smg = Complex(Om, -g);  // Om - i g
  Complex spg = Complex(Om, g);   // Om + i g
  Complex J1 = -L - Complex(0.0, 1.0) / (2.0 * Om) *
                        (-pi * smg * smg + 2.0 * (Om2 - g * g) * std::atan(g / Om) +
                         2.0 * Om * g * std::log((Om2 + g * g) / (L * L)));

  Complex zp = Complex(0.0, 1.0) * smg * l;
  Complex zm = Complex(0.0, -1.0) * spg * l;
  Complex E1cal = pi - Complex(0.0, 1.0) * exp_integral_ei(-zp);
  Complex E2cal = pi + Complex(0.0, 1.0) * exp_integral_ei(-zm);

  Complex J2 = Complex(0.0, g * g / (Om2 * l)) -
               g / (2.0 * Om2 * Om * l) *
                   (Complex(0.0, Om2 + g * g) - smg * smg * Om * l) * std::exp(zp) * E1cal +
               g / (2.0 * Om2 * Om * l) *
                   (Complex(0.0, -(Om2 + g * g)) - spg * spg * Om * l) * std::exp(zm) * E2cal;
  return {J1, J2};
}

ModeMoments mode_moments_closed(const ModeView& mode, const SystemParams& p) {
  p.validate();
  StabilityFlags st = stability_check(p);
  if (!(mode.branch == Branch::plus ? st.stable_plus : st.stable_minus))
    throw std::domain_error("mode_moments_closed: unstable configuration");
  auto [I1, I2] = position_integrals_closed(mode, p);
  auto [J1, J2] = momentum_integrals_closed(mode, p);
  double sign = mode.mode_sign();
  double c = mode.weight;
  ModeMoments mm;
  mm.method = MomentMethod::closed_form;
  mm.cutoff_used = p.lambda_cut;
  mm.chi_sq = c / (pi * p.m) * (I1 + sign * I2).imag();
  mm.p_sq = c * p.m / pi * (J1 + sign * J2).imag();
  if (!(mm.chi_sq > 0.0) || !(mm.p_sq > 0.0))
    throw std::runtime_error("mode_moments_closed: non-positive moment");
  return mm;
}

Eigen::Matrix4d covariance_matrix_late(const SystemParams& p, MomentMethod method) {
  ModeView plus = mode_view(p, Branch::plus);
  ModeView minus = mode_view(p, Branch::minus);
  ModeMoments mp = (method == MomentMethod::closed_form)
                       ? mode_moments_closed(plus, p)
                       : mode_moments_quadrature(plus, p);
  ModeMoments mm = (method == MomentMethod::closed_form)
                       ? mode_moments_closed(minus, p)
                       : mode_moments_quadrature(minus, p);
  Eigen::Matrix4d V = Eigen::Matrix4d::Zero();
  V(0, 0) = V(2, 2) = mp.chi_sq + 0.25 * mm.chi_sq;
  V(0, 2) = V(2, 0) = mp.chi_sq - 0.25 * mm.chi_sq;
  V(1, 1) = V(3, 3) = mp.p_sq + 0.25 * mm.p_sq;
  V(1, 3) = V(3, 1) = mp.p_sq - 0.25 * mm.p_sq;
  return V;
}

}  // namespace qosc
