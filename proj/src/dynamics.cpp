#include "qosc/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qosc {

namespace {

double delay_sign(const ModeView& mode) {
  // g_pm(s) = s^2 + 2 gamma s + omega_pm^2 -+ (2 gamma/ell) e^{-s ell}
  return mode.branch == Branch::plus ? -1.0 : 1.0;
}

}  // namespace

Complex g_tilde(const ModeView& mode, Complex s, const SystemParams& p) {
  double w2 = mode.omega_mode * mode.omega_mode;
  return s * s + 2.0 * p.gamma * s + w2 +
         delay_sign(mode) * (2.0 * p.gamma / p.ell) * std::exp(-s * p.ell);
}

Complex g_tilde_prime(const ModeView& mode, Complex s, const SystemParams& p) {
  return 2.0 * s + 2.0 * p.gamma -
         delay_sign(mode) * 2.0 * p.gamma * std::exp(-s * p.ell);
}

Complex d2_bar(const ModeView& mode, double kappa, const SystemParams& p) {
  Complex g = g_tilde(mode, Complex(0.0, -kappa), p);
  if (std::abs(g) < 1e-14)
    throw std::domain_error("d2_bar: pole on the integration axis (marginal stability)");
  return 1.0 / g;
}

PoleSet dominant_pole_perturbative(const ModeView& mode, const SystemParams& p) {
  double w = mode.omega_mode;
  if (!(2.0 * p.gamma < w * w * p.ell))
    throw std::domain_error("dominant_pole_perturbative: requires 2 gamma < omega_pm^2 ell");
  double sign = mode.mode_sign();
  double x = w * p.ell;
  double Gamma = p.gamma * (1.0 + sign * std::sin(x) / x);
  double W = w * (1.0 - sign * (p.gamma / w) * std::cos(x) / x);
  PoleSet ps;
  ps.dominant = Complex(-Gamma, W);
  ps.dominant_conj = std::conj(ps.dominant);
  ps.method = PoleMethod::perturbative;
  ps.residual_norm = std::abs(g_tilde(mode, ps.dominant, p));
  return ps;
}

Complex find_poles_numeric(const ModeView& mode, const SystemParams& p, Complex seed) {
  Complex s = seed;
  double w2 = mode.omega_mode * mode.omega_mode;
  for (int it = 0; it < 100; ++it) {
    Complex g = g_tilde(mode, s, p);
    double tol = 1e-12 * std::max(w2, std::norm(s));
    if (std::abs(g) <= tol && it > 0) return s;
    Complex gp = g_tilde_prime(mode, s, p);
    if (std::abs(gp) < 1e-300)
      throw std::runtime_error("find_poles_numeric: vanishing derivative");
    Complex ds = g / gp;
    s -= ds;
    if (std::abs(ds) < 1e-16 * (1.0 + std::abs(s))) {
      if (std::abs(g_tilde(mode, s, p)) <= tol) return s;
    }
  }
  if (std::abs(g_tilde(mode, s, p)) <= 1e-12 * std::max(w2, std::norm(s))) return s;
  throw std::runtime_error("find_poles_numeric: no convergence from given seed");
}

StrongDampingRoot strong_damping_root(const ModeView& mode, const SystemParams& p) {
  double w2 = mode.omega_mode * mode.omega_mode;
  double a = w2 * p.ell / (2.0 * p.gamma);
  StrongDampingRoot r;
  if (mode.branch == Branch::plus) {
    // 2 gamma ell y + omega^2 ell^2 - 2 gamma ell e^{-y} = 0
    //   => (y + a) e^{y + a} = e^a  => y = -a + W0(e^a)
    double y = -a + lambert_w0_exp(a);
    r.y = y;
    r.s = Complex(y / p.ell, 0.0);
    r.has_real_root = true;
  } else {
    // the relative mode has no real solution; principal complex root instead
    Complex u = lambert_w0_neg_exp(a);
    Complex y = -a + u;
    r.y = y.real();
    r.s = y / p.ell;
    r.has_real_root = false;
  }
  return r;
}

PoleSet asymptotic_pole_ladder(const ModeView& mode, const SystemParams& p,
                               int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min)
    throw std::domain_error("asymptotic_pole_ladder: need 1 <= n_min <= n_max");
  PoleSet ps;
  ps.method = PoleMethod::asymptotic;
  double offset = (mode.branch == Branch::plus) ? -1.0 : 0.0;  // 1/2 -+ 1/2 - sgn(v)
  for (int n = n_min; n <= n_max; ++n) {
    double v = constants::pi * (2.0 * n + offset);
    double u = std::log(2.0 * p.gamma * p.ell) - 2.0 * std::log(v);
    Complex seed = Complex(u, v) / p.ell;
    Complex refined;
    try {
      refined = find_poles_numeric(mode, p, seed);
    } catch (const std::runtime_error&) {
      throw std::runtime_error("asymptotic_pole_ladder: refinement failed at n = " +
                               std::to_string(n));
    }
    ps.ladder.push_back(refined);
    ps.residual_norm = std::max(ps.residual_norm, std::abs(g_tilde(mode, refined, p)));
  }
  if (!ps.ladder.empty()) {
    ps.dominant = ps.ladder.front();
    ps.dominant_conj = std::conj(ps.dominant);
  }
  return ps;
}

EffectiveParams effective_parameters(const ModeView& mode, const SystemParams& p) {
  double w = mode.omega_mode;
  double sign = mode.mode_sign();
  EffectiveParams e;
  e.W_sq_smooth = w * w - sign * 2.0 * p.gamma / p.ell;
  if (!(e.W_sq_smooth > 0.0))
    throw std::domain_error("effective_parameters: W_smooth^2 <= 0 (unstable separation)");
  double x = w * p.ell;
  e.Gamma = p.gamma * (1.0 + sign * std::sin(x) / x);
  e.W = w * (1.0 - sign * (p.gamma / w) * std::cos(x) / x);
  return e;
}

Complex d2_series(const ModeView& mode, double kappa, int order,
                  const SystemParams& p) {
  double w2 = mode.omega_mode * mode.omega_mode;
  if (!(2.0 * p.gamma / (w2 * p.ell) < 1.0))
    throw std::domain_error("d2_series: requires 2 gamma / (omega_pm^2 ell) < 1");
  Complex g0 = -kappa * kappa + Complex(0.0, -2.0 * p.gamma * kappa) + w2;
  Complex ratio = mode.mode_sign() * (2.0 * p.gamma / p.ell) *
                  std::exp(Complex(0.0, kappa * p.ell)) / g0;
  Complex sum = 0.0;
  Complex term = 1.0 / g0;
  double prev = std::abs(term);
  for (int n = 0; n <= order; ++n) {
    sum += term;
    term *= ratio;
    double mag = std::abs(term);
    if (n > 0 && mag > prev * 1.0000001)
      throw std::runtime_error("d2_series: successive terms grow (diverging)");
    prev = mag;
  }
  return sum;
}

Trajectory simulate_transient(const SystemParams& p, const ModeView& mode,
                              double chi0, double v0, double t_max, double dt,
                              DelayModel delay) {
  p.validate();
  if (!(dt > 0.0) || dt > p.ell / 50.0 ||
      dt > 2.0 * constants::pi / (50.0 * mode.omega_mode))
    throw std::domain_error("simulate_transient: dt too coarse for delay or period");

  // lock the step so ell is an exact multiple; history lookups then always
  // fall on completed intervals
  int per_interval = static_cast<int>(std::ceil(p.ell / dt));
  double h = p.ell / per_interval;
  int n_steps = static_cast<int>(std::ceil(t_max / h));

  Trajectory tr;
  tr.mode = mode.branch;
  tr.times.reserve(n_steps + 1);
  tr.chi.reserve(n_steps + 1);
  tr.chi_dot.reserve(n_steps + 1);
  tr.times.push_back(0.0);
  tr.chi.push_back(chi0);
  tr.chi_dot.push_back(v0);

  double w2 = mode.omega_mode * mode.omega_mode;
  double sign = mode.mode_sign();
  double scale = std::max(std::abs(chi0), std::abs(v0) / mode.omega_mode);
  if (scale == 0.0) scale = 1.0;

  // cubic Hermite on the stored grid
  auto history = [&](double t) -> double {
    if (t <= 0.0) return 0.0;  // quiescent prehistory
    double pos = t / h;
    int k = static_cast<int>(pos);
    if (k >= static_cast<int>(tr.chi.size()) - 1) k = static_cast<int>(tr.chi.size()) - 2;
    double u = (t - k * h) / h;
    double x0 = tr.chi[k], x1 = tr.chi[k + 1];
    double m0 = tr.chi_dot[k] * h, m1 = tr.chi_dot[k + 1] * h;
    double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * x0 + (u3 - 2 * u2 + u) * m0 +
           (-2 * u3 + 3 * u2) * x1 + (u3 - u2) * m1;
  };

  double eff_damp = 2.0 * p.gamma;
  double eff_w2 = w2;
  if (delay == DelayModel::zero_sep_limit) {
    // (2 gamma/ell) chi(t-ell) ~ (2 gamma/ell) chi - 2 gamma chi_dot
    eff_damp = 2.0 * p.gamma + sign * 2.0 * p.gamma;
    eff_w2 = w2 - sign * 2.0 * p.gamma / p.ell;
  }

  auto accel = [&](double t, double x, double v) -> double {
    double a = -eff_damp * v - eff_w2 * x;
    if (delay == DelayModel::full && t >= p.ell)
      a += sign * (2.0 * p.gamma / p.ell) * history(t - p.ell);
    return a;
  };

  double x = chi0, v = v0, t = 0.0;
  for (int i = 0; i < n_steps; ++i) {
    double k1x = v, k1v = accel(t, x, v);
    double k2x = v + 0.5 * h * k1v, k2v = accel(t + 0.5 * h, x + 0.5 * h * k1x, v + 0.5 * h * k1v);
    double k3x = v + 0.5 * h * k2v, k3v = accel(t + 0.5 * h, x + 0.5 * h * k2x, v + 0.5 * h * k2v);
    double k4x = v + h * k3v, k4v = accel(t + h, x + h * k3x, v + h * k3v);
    x += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t = (i + 1) * h;
    tr.times.push_back(t);
    tr.chi.push_back(x);
    tr.chi_dot.push_back(v);
    if (std::abs(x) > 1e6 * scale) {
      tr.blew_up = true;
      break;
    }
  }
  return tr;
}

}  // namespace qosc
