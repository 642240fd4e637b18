#include "qosc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qosc/specfun.hpp"

namespace qosc {

namespace {

using constants::euler_gamma;
using constants::pi;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double varsigma_at(const SystemParams& p, double ell) {
  return p.sigma * ell / (2.0 * p.gamma);
}

double residual_at(const SystemParams& base, double ell) {
  double v = eta_sq_of_ell(base, ell);
  return std::isnan(v) ? kNaN : std::abs(v - 0.25);
}

const char* branch_name(EtaBranch b) {
  switch (b) {
    case EtaBranch::plus_chi_minus_p: return "plus_chi_minus_p";
    case EtaBranch::minus_chi_plus_p: return "minus_chi_plus_p";
    default: return "degenerate";
  }
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::direct_dominated: return "direct_dominated";
    case Regime::induced_dominated: return "induced_dominated";
    default: return "crossover";
  }
}

std::string fmt17(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

double eta_sq_of_ell(SystemParams params, double ell, MomentMethod method) {
  params.ell = ell;
  StabilityFlags st;
  try {
    st = stability_check(params);
  } catch (const std::domain_error&) {
    return kNaN;
  }
  if (!st.both()) return kNaN;
  try {
    ModeView plus = mode_view(params, Branch::plus);
    ModeView minus = mode_view(params, Branch::minus);
    ModeMoments mp = (method == MomentMethod::closed_form)
                         ? mode_moments_closed(plus, params)
                         : mode_moments_quadrature(plus, params);
    ModeMoments mm = (method == MomentMethod::closed_form)
                         ? mode_moments_closed(minus, params)
                         : mode_moments_quadrature(minus, params);
    return eta_reduced(mp.chi_sq, mm.chi_sq, mp.p_sq, mm.p_sq).eta_lt_sq;
  } catch (const std::exception&) {
    return kNaN;
  }
}

std::vector<CriticalSeparation> critical_separation_numeric(
    const SystemParams& params, double bracket_lo, double bracket_hi,
    MomentMethod method) {
  if (!(bracket_lo > 0.0) || !(bracket_hi > bracket_lo))
    throw std::domain_error("critical_separation_numeric: bad bracket");
  double decades = std::log10(bracket_hi / bracket_lo);
  int n = std::max(32, static_cast<int>(std::ceil(400.0 * decades)));
  std::vector<CriticalSeparation> roots;
  double prev_l = 0.0, prev_f = kNaN;
  for (int i = 0; i <= n; ++i) {
    double l = bracket_lo * std::pow(bracket_hi / bracket_lo, double(i) / n);
    double f = eta_sq_of_ell(params, l, method);
    if (!std::isnan(f)) f -= 0.25;
    if (!std::isnan(prev_f) && !std::isnan(f) && prev_f * f < 0.0) {
      double la = prev_l, lb = l, fa = prev_f;
      double mid = 0.5 * (la + lb), fm = 0.0;
      for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (la + lb);
        fm = eta_sq_of_ell(params, mid, method) - 0.25;
        if (std::abs(fm) <= 1e-10 || (lb - la) < 1e-15 * mid) break;
        if (fa * fm < 0.0)
          lb = mid;
        else {
          la = mid;
          fa = fm;
        }
      }
      CriticalSeparation cs;
      cs.value = mid;
      cs.method = SeparationMethod::numeric_root;
      cs.eta_residual = std::abs(fm);
      cs.within_stable =
          2.0 * params.gamma < (params.omega * params.omega - params.sigma) * mid;
      roots.push_back(cs);
    }
    prev_l = l;
    prev_f = f;
  }
  // single crossing is the small-separation death; with two, the larger is ell_gt
  for (auto& r : roots) r.kind = SeparationKind::ell_lt;
  if (roots.size() >= 2) roots.back().kind = SeparationKind::ell_gt;
  return roots;
}

std::vector<CriticalSeparation> critical_separation_numeric(
    const SystemParams& params, MomentMethod method) {
  double w2m = params.omega * params.omega - params.sigma;
  return critical_separation_numeric(params, 2.0 * params.gamma / w2m * 1.01,
                                     1e3 / params.omega, method);
}

CriticalSeparation ell_gt_large_sep(const SystemParams& params) {
  double w2 = params.omega * params.omega;
  double wp2 = w2 + params.sigma, wm2 = w2 - params.sigma;
  double wp = std::sqrt(wp2), wm = std::sqrt(wm2);
  double g = params.gamma;
  double lg = std::log(params.lambda_cut * params.lambda_cut / wm2) - 1.0;

  double alpha_c = wm / (4.0 * wp) + (-wm + wp * lg) / (2.0 * pi * wp2) * g -
                   (pi * pi * (3.0 * wp2 - wm2) + 8.0 * wp * wm * lg) /
                       (8.0 * pi * pi * wp2 * wp * wm) * g * g;
  double beta_c = wm / (pi * wp2 * wp2) * g + 2.0 * lg / (pi * wp2 * wp2) * g * g;

  CriticalSeparation cs;
  cs.kind = SeparationKind::ell_gt;
  cs.method = SeparationMethod::large_sep_formula;
  if (1.0 - 4.0 * alpha_c <= 0.0 || beta_c <= 0.0) {
    // asymptote sits at or above 1/4: no large-separation crossing predicted
    cs.exists = false;
    cs.value = kNaN;
    cs.within_validity = false;
    return cs;
  }
  cs.value = std::sqrt(4.0 * beta_c / (1.0 - 4.0 * alpha_c));
  cs.within_stable = 2.0 * g < wm2 * cs.value;
  double Omega_p = std::sqrt(wp2 - g * g);
  cs.within_validity = varsigma_at(params, cs.value) > 1.0 &&
                       Omega_p * cs.value >= 1.0 && Omega_p * cs.value <= 5.0;
  cs.eta_residual = residual_at(params, cs.value);
  return cs;
}

CriticalSeparation ell_gt_small_sep(const SystemParams& params) {
  double w2 = params.omega * params.omega;
  double wp2 = w2 + params.sigma, wm2 = w2 - params.sigma;
  double wp = std::sqrt(wp2), wm = std::sqrt(wm2);
  double g = params.gamma;

  double denom = -(wp2 + wm2) +
                 std::sqrt((wp2 - wm2) * (wp2 - wm2) + 4.0 * wp2 * wp * wm);
  CriticalSeparation cs;
  cs.kind = SeparationKind::ell_gt;
  cs.method = SeparationMethod::small_sep_formula;
  if (!(denom > 0.0) || !(wm2 > 0.0)) {
    cs.exists = false;
    cs.value = kNaN;
    cs.within_validity = false;
    return cs;
  }
  double l0 = 2.0 * g / denom;

  double a0 = wm2 * wm / (4.0 * wp2 * wp);
  double a1 = -(wp + wm) * wm2 / (pi * wp2 * wp);
  double b0 = (wp2 + wm2) * wm / (4.0 * wp2 * wp);
  double lnL = euler_gamma + std::log(params.lambda_cut * l0);
  double b1 = -((wp + wm) * (wp2 + wm2) - wp * wm2 * lnL) / (pi * wp2 * wp);
  double c1 = -((wp + wm) - wp * lnL) / (pi * wp);
  double x = wm2 * l0 / g;
  // first-order shift of the quadratic root in gamma/omega_+; carries the
  // ell^(0) scale so the correction has the units of a separation
  double corr = l0 * (g / wp) * (a1 + b1 * x + c1 * x * x) / (2.0 * a0 + b0 * x);

  cs.value = l0 + corr;
  cs.within_stable = 2.0 * g < wm2 * cs.value;
  cs.within_validity =
      wp * cs.value < 1.0 && varsigma_at(params, cs.value) > 1.0 && cs.value > 0.0;
  cs.eta_residual = residual_at(params, cs.value);
  return cs;
}

CriticalSeparation ell_lt_iterated(const SystemParams& params, int n_iter) {
  double w2 = params.omega * params.omega;
  double wp2 = w2 + params.sigma, wm2 = w2 - params.sigma;
  double wp = std::sqrt(wp2), wm = std::sqrt(wm2);
  double g = params.gamma;

  double ell = 2.0 * g / wm2 * 1.5;
  CriticalSeparation cs;
  cs.kind = SeparationKind::ell_lt;
  cs.method = SeparationMethod::iterated;
  cs.converged = false;
  for (int it = 0; it < n_iter; ++it) {
    double lnterm = euler_gamma + std::log(wp2 * ell / params.lambda_cut);
    double num = ((wp2 + wm2) / (4.0 * wp * wm) -
                  ((wp2 * wp + wm2 * wm) + wp2 * wm * lnterm) / (pi * wp * wm2) *
                      g / wp) *
                 g / wm2;
    double den = (wp - wm) / (4.0 * wm) - wp * lnterm / (pi * wm) * g / wp;
    double next = num / den;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    bool done = std::abs(next - ell) < 1e-10 * std::abs(ell);
    ell = next;
    if (done) {
      cs.converged = true;
      break;
    }
  }
  cs.value = ell;
  cs.within_stable = 2.0 * g < wm2 * ell;
  cs.within_validity = varsigma_at(params, ell) < 1.0 && params.sigma < 0.5 * w2;
  cs.eta_residual = residual_at(params, ell);
  return cs;
}

WeakCouplingSeparation ell_lt_weak_coupling(double omega, double lambda_cut) {
  WeakCouplingSeparation ws;
  double l_seed = pi / (2.0 * omega);
  double first = l_seed / (std::log(lambda_cut / (omega * omega * l_seed)) - euler_gamma);
  ws.first_iteration.value = first;
  ws.first_iteration.kind = SeparationKind::ell_lt;
  ws.first_iteration.method = SeparationMethod::iterated;

  double arg = -pi * omega * std::exp(euler_gamma) / (2.0 * lambda_cut);
  if (arg <= -std::exp(-1.0))
    throw std::domain_error("ell_lt_weak_coupling: cutoff too small for the W(-1) branch");
  double w = lambert_w(-1, Complex(arg, 0.0)).real();
  ws.lambert_closed.value = -l_seed / w;
  ws.lambert_closed.kind = SeparationKind::ell_lt;
  ws.lambert_closed.method = SeparationMethod::lambert_closed;
  return ws;
}

GammaBound gamma_upper_bound(double omega, double sigma, double lambda_cut) {
  if (!(sigma < omega * omega))
    throw std::domain_error("gamma_upper_bound: requires sigma < omega^2");
  double w2 = omega * omega;
  double wp2 = w2 + sigma, wm2 = w2 - sigma;
  double wp = std::sqrt(wp2), wm = std::sqrt(wm2);
  GammaBound b;
  double num = 0.25 * (1.0 - wm / wp);
  double den = wp / (2.0 * pi * wp2) * (std::log(lambda_cut * lambda_cut / wm2) - 1.0) -
               wm / (2.0 * pi * wp2);
  b.exact = num / den;
  b.small_sigma = omega * pi * sigma / (4.0 * w2 * (std::log(lambda_cut / omega) - 1.0));
  return b;
}

double eta_sq_asymptote(double omega, double sigma) {
  double w2 = omega * omega;
  return 0.25 * std::sqrt((w2 - sigma) / (w2 + sigma));
}

SweepResult sweep(const SystemParams& base, const std::vector<SweepAxis>& axes,
                  bool ell_specified) {
  SweepResult result;
  result.axes = axes;
  bool has_ell_axis = false;
  for (const auto& ax : axes) {
    if (ax.name != "gamma" && ax.name != "sigma" && ax.name != "ell" &&
        ax.name != "lambda_cut" && ax.name != "beta")
      throw std::domain_error("sweep: unknown axis " + ax.name);
    if (ax.values.empty()) throw std::domain_error("sweep: empty axis " + ax.name);
    if (ax.name == "ell") has_ell_axis = true;
  }
  result.ell_from_critical = !ell_specified && !has_ell_axis;

  size_t total = 1;
  for (const auto& ax : axes) total *= ax.values.size();

  for (size_t flat = 0; flat < total; ++flat) {
    SystemParams p = base;
    size_t rem = flat;
    for (size_t a = axes.size(); a-- > 0;) {
      double v = axes[a].values[rem % axes[a].values.size()];
      rem /= axes[a].values.size();
      if (axes[a].name == "gamma") p.gamma = v;
      else if (axes[a].name == "sigma") p.sigma = v;
      else if (axes[a].name == "ell") p.ell = v;
      else if (axes[a].name == "lambda_cut") p.lambda_cut = v;
      else if (axes[a].name == "beta") p.beta = v;
    }
    SweepPoint pt;
    pt.params = p;
    try {
      if (result.ell_from_critical) {
        auto roots = critical_separation_numeric(p);
        if (roots.empty()) throw std::runtime_error("no critical separation");
        pt.ell_used = roots.front().value;
        p.ell = pt.ell_used;
        pt.params.ell = pt.ell_used;
      } else {
        pt.ell_used = p.ell;
      }
      StabilityFlags st = stability_check(p);
      pt.stable_plus = st.stable_plus;
      pt.stable_minus = st.stable_minus;
      RegimeReport rr = classify_regime(p);
      pt.regime = rr.regime;
      if (!st.both()) throw std::runtime_error("unstable point");
      MomentMethod method =
          p.zero_temperature() ? MomentMethod::closed_form : MomentMethod::quadrature;
      ModeView plus = mode_view(p, Branch::plus);
      ModeView minus = mode_view(p, Branch::minus);
      ModeMoments mp = (method == MomentMethod::closed_form)
                           ? mode_moments_closed(plus, p)
                           : mode_moments_quadrature(plus, p);
      ModeMoments mm = (method == MomentMethod::closed_form)
                           ? mode_moments_closed(minus, p)
                           : mode_moments_quadrature(minus, p);
      EntanglementReport rep =
          entanglement_report(mp.chi_sq, mm.chi_sq, mp.p_sq, mm.p_sq);
      pt.eta_sq = rep.eta_lt * rep.eta_lt;
      pt.negativity = rep.negativity;
      pt.branch = rep.branch;
      pt.valid = true;
    } catch (const std::exception&) {
      pt.eta_sq = kNaN;
      pt.negativity = kNaN;
      pt.valid = false;
    }
    result.points.push_back(pt);
  }
  return result;
}

void write_sweep_csv(const SweepResult& r, std::ostream& os) {
  os << "m,omega,gamma,sigma,ell,lambda_cut,beta,eta_sq,negativity,branch,"
        "stable_plus,stable_minus,regime,valid\n";
  for (const auto& pt : r.points) {
    const SystemParams& p = pt.params;
    os << fmt17(p.m) << ',' << fmt17(p.omega) << ',' << fmt17(p.gamma) << ','
       << fmt17(p.sigma) << ',' << fmt17(pt.ell_used) << ',' << fmt17(p.lambda_cut)
       << ',' << fmt17(p.beta) << ',' << fmt17(pt.eta_sq) << ','
       << fmt17(pt.negativity) << ',' << branch_name(pt.branch) << ','
       << (pt.stable_plus ? 1 : 0) << ',' << (pt.stable_minus ? 1 : 0) << ','
       << regime_name(pt.regime) << ',' << (pt.valid ? 1 : 0) << '\n';
  }
}

std::string sweep_to_json(const SweepResult& r) {
  nlohmann::json doc;
  doc["axes"] = nlohmann::json::array();
  for (const auto& ax : r.axes)
    doc["axes"].push_back({{"name", ax.name}, {"values", ax.values}});
  doc["ell_from_critical"] = r.ell_from_critical;
  doc["points"] = nlohmann::json::array();
  for (const auto& pt : r.points) {
    nlohmann::json row;
    row["m"] = pt.params.m;
    row["omega"] = pt.params.omega;
    row["gamma"] = pt.params.gamma;
    row["sigma"] = pt.params.sigma;
    row["ell"] = pt.ell_used;
    row["lambda_cut"] = pt.params.lambda_cut;
    row["beta"] = pt.params.beta;
    if (pt.valid) {
      row["eta_sq"] = pt.eta_sq;
      row["negativity"] = pt.negativity;
    } else {
      row["eta_sq"] = nullptr;
      row["negativity"] = nullptr;
    }
    row["branch"] = branch_name(pt.branch);
    row["stable_plus"] = pt.stable_plus;
    row["stable_minus"] = pt.stable_minus;
    row["regime"] = regime_name(pt.regime);
    row["valid"] = pt.valid;
    doc["points"].push_back(row);
  }
  return doc.dump(2);
}

}  // namespace qosc
