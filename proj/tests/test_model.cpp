#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qosc/model.hpp"

using namespace qosc;

namespace {
SystemParams base() {
  SystemParams p;
  p.m = 1.0;
  p.omega = 1.0;
  p.gamma = 0.05;
  p.sigma = 0.3;
  p.ell = 2.0;
  p.lambda_cut = 1000.0;
  return p;
}
}  // namespace

TEST_CASE("validate rejects unphysical parameters") {
  CHECK_NOTHROW(base().validate());
  auto bad = base();
  bad.m = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = base();
  bad.omega = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = base();
  bad.gamma = -0.01;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = base();
  bad.ell = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = base();
  bad.lambda_cut = 0.5;  // below omega
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = base();
  bad.sigma = 1.0;  // = omega^2 > omega^2 - gamma^2
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = base();
  bad.sigma = -1.2;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("beta sentinel") {
  auto p = base();
  CHECK(p.zero_temperature());
  p.beta = 5.0;
  CHECK(!p.zero_temperature());
  p.beta = kBetaInfinite;
  CHECK(p.zero_temperature());
}

TEST_CASE("mode_view frequencies and weights") {
  auto p = base();
  ModeView vp = mode_view(p, Branch::plus);
  ModeView vm = mode_view(p, Branch::minus);
  CHECK(vp.omega_mode == doctest::Approx(std::sqrt(1.3)).epsilon(1e-15));
  CHECK(vm.omega_mode == doctest::Approx(std::sqrt(0.7)).epsilon(1e-15));
  CHECK(vp.resonance == doctest::Approx(std::sqrt(1.3 - 0.0025)).epsilon(1e-15));
  CHECK(vm.resonance == doctest::Approx(std::sqrt(0.7 - 0.0025)).epsilon(1e-15));
  CHECK(vp.weight == 0.5);
  CHECK(vm.weight == 2.0);
  CHECK(vp.mode_sign() == 1.0);
  CHECK(vm.mode_sign() == -1.0);
}

TEST_CASE("renormalized frequency shift") {
  // omega^2 = 2 - 4*0.05*10/pi
  double w = renormalized_frequency(2.0, 0.05, 10.0);
  CHECK(w == doctest::Approx(std::sqrt(2.0 - 2.0 / 3.14159265358979323846))
                 .epsilon(1e-14));
  // no damping: no shift
  CHECK(renormalized_frequency(4.0, 0.0, 1e6) == doctest::Approx(2.0));
  // shift eats the whole frequency
  CHECK_THROWS_AS(renormalized_frequency(1.0, 1.0, 100.0), std::domain_error);
}

TEST_CASE("stability boundary is classified unstable") {
  auto p = base();
  p.sigma = 0.0;
  // 2 gamma = omega^2 ell exactly
  p.ell = 2.0 * p.gamma / (p.omega * p.omega);
  auto f = stability_check(p);
  CHECK(!f.stable_plus);
  CHECK(!f.stable_minus);
  CHECK(!f.both());
  p.ell *= 1.0001;
  f = stability_check(p);
  CHECK(f.both());
}

TEST_CASE("minus mode destabilizes first as sigma grows") {
  auto p = base();
  p.gamma = 0.05;
  p.sigma = 0.6;
  p.ell = 2.0 * p.gamma / (p.omega * p.omega - p.sigma) * 0.999;
  auto f = stability_check(p);
  CHECK(f.stable_plus);
  CHECK(!f.stable_minus);
}

TEST_CASE("regime classification with crossover band") {
  auto p = base();
  // varsigma = sigma ell / 2 gamma
  p.sigma = 0.3;
  p.ell = 2.0;
  p.gamma = 0.05;  // varsigma = 6
  CHECK(classify_regime(p).regime == Regime::direct_dominated);
  p.gamma = 2.0 * p.gamma;  // keep stable, varsigma = 3
  CHECK(classify_regime(p).regime == Regime::direct_dominated);
  p.gamma = 0.05;
  p.ell = 2.0 * p.gamma / p.sigma;  // varsigma = 1 exactly
  CHECK(classify_regime(p).regime == Regime::crossover);
  p.ell *= 1.0 + kRegimeMargin / 2;
  CHECK(classify_regime(p).regime == Regime::crossover);
  p.ell = 2.0 * p.gamma / p.sigma * 2.0;  // varsigma = 2
  CHECK(classify_regime(p).regime == Regime::direct_dominated);
  p.sigma = 0.001;
  p.ell = 2.0;  // varsigma = 0.02
  CHECK(classify_regime(p).regime == Regime::induced_dominated);
}

TEST_CASE("regime report carries varsigma, stability, validity time") {
  auto p = base();
  auto r = classify_regime(p);
  CHECK(r.varsigma == doctest::Approx(0.3 * 2.0 / 0.1).epsilon(1e-15));
  CHECK(r.stable_plus);
  CHECK(r.stable_minus);
  double w2m = p.omega * p.omega - p.sigma;
  CHECK(r.zero_sep_validity_time ==
        doctest::Approx(1.0 / (p.gamma * w2m * p.ell * p.ell)).epsilon(1e-15));
}

TEST_CASE("varsigma undefined at gamma = 0") {
  auto p = base();
  p.gamma = 0.0;
  CHECK_THROWS_AS(classify_regime(p), std::domain_error);
}
