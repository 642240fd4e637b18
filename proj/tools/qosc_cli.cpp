// Command-line front end: negativity, sweep, critical-sep, poles, transient,
// check.  Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qosc/analysis.hpp"
#include "qosc/covariance.hpp"
#include "qosc/dynamics.hpp"
#include "qosc/entanglement.hpp"
#include "qosc/model.hpp"

namespace {

using namespace qosc;

const char* branch_str(EtaBranch b) {
  switch (b) {
    case EtaBranch::plus_chi_minus_p: return "plus_chi_minus_p";
    case EtaBranch::minus_chi_plus_p: return "minus_chi_plus_p";
    default: return "degenerate";
  }
}

const char* regime_str(Regime r) {
  switch (r) {
    case Regime::direct_dominated: return "direct_dominated";
    case Regime::induced_dominated: return "induced_dominated";
    default: return "crossover";
  }
}

// temp-file-then-rename so a crash never leaves a truncated output file
void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp);
    os << content;
    if (!os.good()) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed for " + path);
}

// key=value config file; unknown keys are rejected (fail-closed)
void apply_config(const std::string& path, SystemParams& p) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config " + path);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key=value, got '" + line + "'");
    std::string key = trimmed.substr(0, eq);
    double val = std::stod(trimmed.substr(eq + 1));
    if (key == "m") p.m = val;
    else if (key == "omega") p.omega = val;
    else if (key == "gamma") p.gamma = val;
    else if (key == "sigma") p.sigma = val;
    else if (key == "ell") p.ell = val;
    else if (key == "lambda_cut" || key == "cutoff") p.lambda_cut = val;
    else if (key == "beta") p.beta = val;
    else throw std::runtime_error("config: unknown key '" + key + "'");
  }
}

// "gamma=0.01:0.1:10,sigma=0.05:0.5:10" -> linear axes start:stop:count
std::vector<SweepAxis> parse_grid(const std::string& spec) {
  std::vector<SweepAxis> axes;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("grid: expected name=start:stop:count in '" + part + "'");
    SweepAxis ax;
    ax.name = part.substr(0, eq);
    std::string range = part.substr(eq + 1);
    double start, stop;
    int count;
    if (std::sscanf(range.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 ||
        count < 1)
      throw std::runtime_error("grid: bad range '" + range + "'");
    for (int i = 0; i < count; ++i)
      ax.values.push_back(count == 1 ? start
                                     : start + (stop - start) * i / (count - 1));
    axes.push_back(ax);
  }
  if (axes.empty()) throw std::runtime_error("grid: empty specification");
  return axes;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

int run_check() {
  // quadrature vs closed form on a small fixed grid (the built-in self-test)
  struct Case { double omega, sigma, gamma, ell, cut; };
  const Case grid[] = {
      {1.0, 0.3, 2e-4, 2.0, 1000.0},
      {1.2, 0.2, 1e-4, 1.5, 1200.0},
      {0.9, 0.1, 3e-4, 3.0, 900.0},
  };
  bool ok = true;
  for (const auto& c : grid) {
    SystemParams p;
    p.omega = c.omega;
    p.sigma = c.sigma;
    p.gamma = c.gamma;
    p.ell = c.ell;
    p.lambda_cut = c.cut;
    for (Branch b : {Branch::plus, Branch::minus}) {
      ModeView mv = mode_view(p, b);
      ModeMoments mq = mode_moments_quadrature(mv, p);
      ModeMoments mc = mode_moments_closed(mv, p);
      double rc = std::abs(mq.chi_sq - mc.chi_sq) / mc.chi_sq;
      double rp = std::abs(mq.p_sq - mc.p_sq) / mc.p_sq;
      bool pass = rc <= 1e-6 && rp <= 1e-6;
      ok = ok && pass;
      std::cout << (pass ? "[pass]" : "[FAIL]") << " omega=" << c.omega
                << " sigma=" << c.sigma << " gamma=" << c.gamma
                << " mode=" << (b == Branch::plus ? "plus" : "minus")
                << " rel_chi=" << rc << " rel_p=" << rp << "\n";
    }
  }
  std::cout << (ok ? "check: all comparisons passed\n" : "check: FAILURES above\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"late-time entanglement of two separated detectors in a field bath"};
  app.require_subcommand(1);

  SystemParams base;

  // pre-scan for --config so file values act as defaults under the flags
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        apply_config(argv[i + 1], base);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
    }
  }

  std::string config_path, out_path, format = "csv", grid_spec, mode_str = "plus";
  double chi0 = 1.0, v0 = 0.0, t_max = 100.0, dt = 0.0;
  double lo = 0.0, hi = 0.0;
  int nmin = 5, nmax = 10;
  bool ell_given = false;

  auto add_common = [&](CLI::App* cmd, bool with_ell) {
    cmd->add_option("--config", config_path, "key=value defaults file");
    cmd->add_option("--mass", base.m, "oscillator mass");
    cmd->add_option("--omega", base.omega, "renormalized frequency");
    cmd->add_option("--gamma", base.gamma, "damping constant");
    cmd->add_option("--sigma", base.sigma, "inter-oscillator coupling");
    cmd->add_option("--cutoff,--lambda_cut", base.lambda_cut, "UV cutoff");
    cmd->add_option("--beta", base.beta, "inverse temperature (<=0 means T=0)");
    if (with_ell)
      cmd->add_option("--ell", base.ell, "detector separation")
          ->each([&](const std::string&) { ell_given = true; });
  };

  auto* c_neg = app.add_subcommand("negativity", "late-time entanglement at one point");
  add_common(c_neg, true);
  c_neg->add_option("--out", out_path, "optional output file (json)");

  auto* c_sweep = app.add_subcommand("sweep", "parameter grid sweep");
  add_common(c_sweep, true);
  c_sweep->add_option("--grid", grid_spec, "axes, e.g. gamma=0.01:0.1:10,sigma=0.05:0.5:10")
      ->required();
  c_sweep->add_option("--out", out_path, "output file")->required();
  c_sweep->add_option("--format", format, "csv or json");

  auto* c_crit = app.add_subcommand("critical-sep", "critical separations");
  add_common(c_crit, false);
  c_crit->add_option("--lo", lo, "bracket lower edge (default stability bound x1.01)");
  c_crit->add_option("--hi", hi, "bracket upper edge (default 1e3/omega)");
  c_crit->add_option("--out", out_path, "optional output file (json)");

  auto* c_poles = app.add_subcommand("poles", "characteristic-function poles");
  add_common(c_poles, true);
  c_poles->add_option("--mode", mode_str, "plus or minus");
  c_poles->add_option("--nmin", nmin, "ladder start index");
  c_poles->add_option("--nmax", nmax, "ladder end index");

  auto* c_tr = app.add_subcommand("transient", "method-of-steps trajectory");
  add_common(c_tr, true);
  c_tr->add_option("--mode", mode_str, "plus or minus");
  c_tr->add_option("--chi0", chi0, "initial displacement");
  c_tr->add_option("--v0", v0, "initial velocity");
  c_tr->add_option("--tmax", t_max, "simulated time span");
  c_tr->add_option("--dt", dt, "step (default ell/64)");
  c_tr->add_option("--out", out_path, "output CSV")->required();

  auto* c_check = app.add_subcommand("check", "built-in invariant self-test");
  (void)c_check;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(c_check)) return run_check();

    if (app.got_subcommand(c_neg)) {
      StabilityFlags st = stability_check(base);
      if (!st.both()) {
        std::cerr << "error: unstable configuration (2 gamma > omega_pm^2 ell)\n";
        return 1;
      }
      ModeView plus = mode_view(base, Branch::plus);
      ModeView minus = mode_view(base, Branch::minus);
      ModeMoments mp = base.zero_temperature() ? mode_moments_closed(plus, base)
                                               : mode_moments_quadrature(plus, base);
      ModeMoments mm = base.zero_temperature() ? mode_moments_closed(minus, base)
                                               : mode_moments_quadrature(minus, base);
      EntanglementReport rep =
          entanglement_report(mp.chi_sq, mm.chi_sq, mp.p_sq, mm.p_sq);
      RegimeReport rr = classify_regime(base);
      std::ostringstream os;
      os << "eta_lt = " << fmt(rep.eta_lt) << "\n"
         << "eta_gt = " << fmt(rep.eta_gt) << "\n"
         << "negativity = " << fmt(rep.negativity) << "\n"
         << "log_negativity = " << fmt(rep.log_negativity) << "\n"
         << "branch = " << branch_str(rep.branch) << "\n"
         << "regime = " << regime_str(rr.regime)
         << " (varsigma = " << fmt(rr.varsigma) << ")\n"
         << "entangled = " << (rep.entangled ? "yes" : "no") << "\n";
      std::cout << os.str();
      if (!out_path.empty()) atomic_write(out_path, os.str());
      return 0;
    }

    if (app.got_subcommand(c_sweep)) {
      auto axes = parse_grid(grid_spec);
      SweepResult r = sweep(base, axes, ell_given);
      std::string payload;
      if (format == "csv") {
        std::ostringstream os;
        write_sweep_csv(r, os);
        payload = os.str();
      } else if (format == "json") {
        payload = sweep_to_json(r);
      } else {
        std::cerr << "error: unknown format '" << format << "'\n";
        return 2;
      }
      atomic_write(out_path, payload);
      std::cout << "wrote " << r.points.size() << " points to " << out_path << "\n";
      return 0;
    }

    if (app.got_subcommand(c_crit)) {
      double w2m = base.omega * base.omega - base.sigma;
      double use_lo = lo > 0.0 ? lo : 2.0 * base.gamma / w2m * 1.01;
      double use_hi = hi > 0.0 ? hi : 1e3 / base.omega;
      auto roots = critical_separation_numeric(base, use_lo, use_hi);
      std::ostringstream os;
      os << "numeric roots: " << roots.size() << "\n";
      for (const auto& r : roots)
        os << "  " << (r.kind == SeparationKind::ell_gt ? "ell_gt" : "ell_lt")
           << " = " << fmt(r.value) << " (|eta^2-1/4| = " << fmt(r.eta_residual)
           << ")\n";
      CriticalSeparation li = ell_lt_iterated(base);
      os << "ell_lt iterated = " << fmt(li.value)
         << (li.within_validity ? "" : " [outside validity]") << "\n";
      CriticalSeparation gs = ell_gt_small_sep(base);
      if (gs.exists)
        os << "ell_gt small-sep = " << fmt(gs.value)
           << (gs.within_validity ? "" : " [outside validity]") << "\n";
      CriticalSeparation gl = ell_gt_large_sep(base);
      if (gl.exists)
        os << "ell_gt large-sep = " << fmt(gl.value)
           << (gl.within_validity ? "" : " [outside validity]") << "\n";
      else
        os << "ell_gt large-sep: no crossing predicted (asymptote above 1/4)\n";
      GammaBound gb = gamma_upper_bound(base.omega, base.sigma, base.lambda_cut);
      os << "gamma upper bound = " << fmt(gb.exact)
         << " (small-sigma approx " << fmt(gb.small_sigma) << ")\n";
      std::cout << os.str();
      if (!out_path.empty()) atomic_write(out_path, os.str());
      return 0;
    }

    Branch br = (mode_str == "minus") ? Branch::minus : Branch::plus;
    if (mode_str != "plus" && mode_str != "minus") {
      std::cerr << "error: --mode must be plus or minus\n";
      return 2;
    }

    if (app.got_subcommand(c_poles)) {
      ModeView mv = mode_view(base, br);
      std::ostringstream os;
      StabilityFlags st = stability_check(base);
      bool stable = br == Branch::plus ? st.stable_plus : st.stable_minus;
      if (stable) {
        PoleSet pert = dominant_pole_perturbative(mv, base);
        Complex refined = find_poles_numeric(mv, base, pert.dominant);
        os << "perturbative s = " << fmt(pert.dominant.real()) << " + "
           << fmt(pert.dominant.imag()) << " i (|g| = " << fmt(pert.residual_norm)
           << ")\n";
        os << "newton s = " << fmt(refined.real()) << " + " << fmt(refined.imag())
           << " i\n";
        EffectiveParams ep = effective_parameters(mv, base);
        os << "Gamma = " << fmt(ep.Gamma) << ", W = " << fmt(ep.W)
           << ", W_sq_smooth = " << fmt(ep.W_sq_smooth) << "\n";
      } else {
        os << "unstable branch (2 gamma > omega_pm^2 ell)\n";
      }
      StrongDampingRoot sd = strong_damping_root(mv, base);
      os << "strong-damping root s = " << fmt(sd.s.real()) << " + "
         << fmt(sd.s.imag()) << " i"
         << (sd.has_real_root ? "" : " [no real root for this mode]") << "\n";
      PoleSet ladder = asymptotic_pole_ladder(mv, base, nmin, nmax);
      for (size_t i = 0; i < ladder.ladder.size(); ++i)
        os << "ladder n=" << (nmin + i) << " s = " << fmt(ladder.ladder[i].real())
           << " + " << fmt(ladder.ladder[i].imag()) << " i\n";
      std::cout << os.str();
      return 0;
    }

    if (app.got_subcommand(c_tr)) {
      ModeView mv = mode_view(base, br);
      double step = dt > 0.0 ? dt : base.ell / 64.0;
      Trajectory tr = simulate_transient(base, mv, chi0, v0, t_max, step);
      std::ostringstream os;
      os << "t,chi,chi_dot\n";
      for (size_t i = 0; i < tr.times.size(); ++i)
        os << fmt(tr.times[i]) << ',' << fmt(tr.chi[i]) << ',' << fmt(tr.chi_dot[i])
           << '\n';
      atomic_write(out_path, os.str());
      if (tr.blew_up) {
        std::cerr << "warning: trajectory blew up (instability detected)\n";
        return 1;
      }
      std::cout << "wrote " << tr.times.size() << " samples to " << out_path << "\n";
      return 0;
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
