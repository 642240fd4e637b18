#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qosc/covariance.hpp"
#include "qosc/entanglement.hpp"

using namespace qosc;

namespace {

Eigen::Matrix4d two_mode_squeezed(double r) {
  double ch = std::cosh(2.0 * r), sh = std::sinh(2.0 * r);
  Eigen::Matrix4d V = Eigen::Matrix4d::Zero();
  V(0, 0) = V(1, 1) = V(2, 2) = V(3, 3) = 0.5 * ch;
  V(0, 2) = V(2, 0) = 0.5 * sh;
  V(1, 3) = V(3, 1) = -0.5 * sh;
  return V;
}

}  // namespace

TEST_CASE("partial transpose flips the p2 rows and is an involution") {
  Eigen::Matrix4d V = two_mode_squeezed(0.7);
  V(0, 1) = V(1, 0) = 0.03;  // add chi1-p1 correlation for generality
  V(0, 3) = V(3, 0) = 0.01;
  Eigen::Matrix4d Vt = partial_transpose(V);
  CHECK(Vt(0, 3) == -V(0, 3));
  CHECK(Vt(1, 3) == -V(1, 3));
  CHECK(Vt(2, 3) == -V(2, 3));
  CHECK(Vt(3, 3) == V(3, 3));
  CHECK(Vt(0, 0) == V(0, 0));
  CHECK(Vt(0, 2) == V(0, 2));
  CHECK((partial_transpose(Vt) - V).norm() == 0.0);
  CHECK((Vt - Vt.transpose()).norm() == 0.0);
}

TEST_CASE("vacuum covariance: symplectic eigenvalues are exactly 1/2") {
  double w = 1.7;
  Eigen::Matrix4d V = Eigen::Matrix4d::Zero();
  V(0, 0) = V(2, 2) = 0.5 / w;
  V(1, 1) = V(3, 3) = 0.5 * w;
  auto [gt, lt] = symplectic_eigenvalues(V);
  CHECK(gt == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(lt == doctest::Approx(0.5).epsilon(1e-14));
  // partial transpose leaves the vacuum separable
  auto [gtt, ltt] = symplectic_eigenvalues(partial_transpose(V));
  CHECK(ltt == doctest::Approx(0.5).epsilon(1e-14));
  auto [n, en] = negativity(ltt);
  CHECK(n == 0.0);
  CHECK(en == 0.0);
}

TEST_CASE("two-mode squeezed state: known PT spectrum and log-negativity") {
  for (double r : {0.2, 0.7, 1.5}) {
    Eigen::Matrix4d V = two_mode_squeezed(r);
    auto [gt, lt] = symplectic_eigenvalues(V);
    // pure state: both symplectic eigenvalues at the vacuum floor; the
    // block-determinant discriminant cancels there, costing ~sqrt(eps)
    CHECK(gt == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(lt == doctest::Approx(0.5).epsilon(1e-6));
    auto [gtt, ltt] = symplectic_eigenvalues(partial_transpose(V));
    CHECK(ltt == doctest::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-12));
    CHECK(gtt == doctest::Approx(0.5 * std::exp(2.0 * r)).epsilon(1e-12));
    auto [n, en] = negativity(ltt);
    CHECK(en == doctest::Approx(2.0 * r).epsilon(1e-11));
    // N = (1 - 2 eta)/(2 eta) = e^{2r} - 1
    CHECK(n == doctest::Approx(std::expm1(2.0 * r)).epsilon(1e-11));
  }
}

TEST_CASE("block-determinant route agrees with the spectral route") {
  auto check_both = [](const Eigen::Matrix4d& V, double tol) {
    auto [g1, l1] = symplectic_eigenvalues(V);
    auto [g2, l2] = symplectic_eigenvalues_spectral(V);
    CHECK(g1 == doctest::Approx(g2).epsilon(tol));
    CHECK(l1 == doctest::Approx(l2).epsilon(tol));
  };
  // the pure squeezed state is degenerate (both 1/2): cancellation-limited
  check_both(two_mode_squeezed(0.9), 1e-6);
  check_both(partial_transpose(two_mode_squeezed(0.9)), 1e-10);
  SystemParams p;
  p.omega = 1.0;
  p.gamma = 0.05;
  p.sigma = 0.3;
  p.ell = 2.0;
  p.lambda_cut = 1000.0;
  Eigen::Matrix4d V = covariance_matrix_late(p);
  check_both(V, 1e-10);
  check_both(partial_transpose(V), 1e-10);
}

TEST_CASE("symplectic_eigenvalues rejects bad input") {
  Eigen::Matrix4d V = two_mode_squeezed(0.5);
  Eigen::Matrix4d A = V;
  A(0, 1) = 0.2;  // not symmetric
  CHECK_THROWS_AS(symplectic_eigenvalues(A), std::domain_error);
  Eigen::Matrix4d B = V;
  B(0, 0) = -0.5;  // not positive definite
  CHECK_THROWS_AS(symplectic_eigenvalues(B), std::domain_error);
}

TEST_CASE("reduced eta picks the smaller cross product") {
  // chi_p p_m = 0.09, chi_m p_p = 0.16
  auto r = eta_reduced(0.3, 0.4, 0.4, 0.3);
  CHECK(r.eta_lt_sq == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(r.eta_gt_sq == doctest::Approx(0.16).epsilon(1e-14));
  CHECK(r.branch == EtaBranch::plus_chi_minus_p);
  auto r2 = eta_reduced(0.4, 0.3, 0.3, 0.4);
  CHECK(r2.eta_lt_sq == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(r2.branch == EtaBranch::minus_chi_plus_p);
  auto r3 = eta_reduced(0.5, 0.5, 0.5, 0.5);
  CHECK(r3.branch == EtaBranch::degenerate);
}

TEST_CASE("reduced eta equals the PT symplectic eigenvalue for pipeline states") {
  SystemParams p;
  p.omega = 1.0;
  p.gamma = 0.05;
  p.sigma = 0.3;
  p.lambda_cut = 1000.0;
  for (double ell : {0.15, 0.5, 2.0}) {
    p.ell = ell;
    auto mp_ = mode_moments_closed(mode_view(p, Branch::plus), p);
    auto mm_ = mode_moments_closed(mode_view(p, Branch::minus), p);
    auto red = eta_reduced(mp_.chi_sq, mm_.chi_sq, mp_.p_sq, mm_.p_sq);
    auto [gtt, ltt] =
        symplectic_eigenvalues(partial_transpose(covariance_matrix_late(p)));
    CHECK(std::sqrt(red.eta_lt_sq) == doctest::Approx(ltt).epsilon(1e-10));
    CHECK(std::sqrt(red.eta_gt_sq) == doctest::Approx(gtt).epsilon(1e-10));
  }
}

TEST_CASE("negativity thresholds") {
  auto [n0, e0] = negativity(0.5);
  CHECK(n0 == 0.0);
  CHECK(e0 == 0.0);
  auto [n1, e1] = negativity(0.25);
  CHECK(n1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e1 == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  auto [n2, e2] = negativity(0.6);  // separable: clamped to zero
  CHECK(n2 == 0.0);
  CHECK(e2 == 0.0);
}

TEST_CASE("entanglement report at frozen reference points") {
  // separable point: omega=1 sigma=0.3 gamma=0.05 ell=2 Lambda=1000
  {
    auto rep = entanglement_report(0.21499015679723531, 1.1322344173579416,
                                   0.38384772809745067, 1.2540907318189388);
    CHECK(rep.eta_lt == doctest::Approx(0.51924672658738373).epsilon(1e-13));
    CHECK(!rep.entangled);
    CHECK(rep.negativity == 0.0);
    CHECK(rep.log_negativity == 0.0);
  }
  // entangled point: same parameters at ell = 0.15
  {
    auto rep = entanglement_report(0.26148881448620109, 0.66109200024012321,
                                   0.34347054978225548, 1.4924700483029987);
    CHECK(rep.eta_lt == doctest::Approx(0.47651404258334936).epsilon(1e-13));
    CHECK(rep.entangled);
    CHECK(rep.negativity == doctest::Approx(0.04928702056570053).epsilon(1e-12));
    CHECK(rep.log_negativity == doctest::Approx(0.04811090549281622).epsilon(1e-12));
    CHECK(rep.branch == EtaBranch::minus_chi_plus_p);
  }
}
