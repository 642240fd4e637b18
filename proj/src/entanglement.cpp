#include "qosc/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qosc {

Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& V) {
  Eigen::Matrix4d W = V;
  for (int i = 0; i < 4; ++i) {
    if (i == 3) continue;
    W(i, 3) = -W(i, 3);
    W(3, i) = -W(3, i);
  }
  return W;
}

std::pair<double, double> symplectic_eigenvalues(const Eigen::Matrix4d& V) {
  if (!V.isApprox(V.transpose(), 1e-12))
    throw std::domain_error("symplectic_eigenvalues: matrix not symmetric");
  Eigen::Matrix2d A = V.block<2, 2>(0, 0);
  Eigen::Matrix2d B = V.block<2, 2>(2, 2);
  Eigen::Matrix2d C = V.block<2, 2>(0, 2);
  double delta = A.determinant() + B.determinant() + 2.0 * C.determinant();
  double detV = V.determinant();
  double disc = delta * delta - 4.0 * detV;
  if (disc < 0.0) {
    if (disc < -1e-10 * delta * delta)
      throw std::domain_error("symplectic_eigenvalues: negative discriminant");
    disc = 0.0;
  }
  double root = std::sqrt(disc);
  double gt_sq = 0.5 * (delta + root);
  double lt_sq = 0.5 * (delta - root);
  if (!(lt_sq > 0.0))
    throw std::domain_error("symplectic_eigenvalues: non-positive-definite input");
  return {std::sqrt(gt_sq), std::sqrt(lt_sq)};
}

std::pair<double, double> symplectic_eigenvalues_spectral(const Eigen::Matrix4d& V) {
  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  J(0, 1) = 1.0;
  J(1, 0) = -1.0;
  J(2, 3) = 1.0;
  J(3, 2) = -1.0;
  Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
  M.real() = J * V;
  M *= std::complex<double>(0.0, 1.0);
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(M, false);
  std::vector<double> mags;
  for (int i = 0; i < 4; ++i) mags.push_back(std::abs(solver.eigenvalues()(i)));
  std::sort(mags.begin(), mags.end());
  // magnitudes come in duplicated pairs {lt, lt, gt, gt}
  return {0.5 * (mags[2] + mags[3]), 0.5 * (mags[0] + mags[1])};
}

ReducedEta eta_reduced(double chi_p, double chi_m, double p_p, double p_m) {
  if (!(chi_p > 0.0 && chi_m > 0.0 && p_p > 0.0 && p_m > 0.0))
    throw std::domain_error("eta_reduced: moments must be positive");
  double prod_a = chi_p * p_m;  // <chi+^2><p-^2>
  double prod_b = chi_m * p_p;  // <chi-^2><p+^2>
  ReducedEta r;
  r.eta_lt_sq = std::min(prod_a, prod_b);
  r.eta_gt_sq = std::max(prod_a, prod_b);
  double rel = std::abs(prod_a - prod_b) / std::max(prod_a, prod_b);
  if (rel < 1e-9)
    r.branch = EtaBranch::degenerate;
  else
    r.branch = (prod_a < prod_b) ? EtaBranch::plus_chi_minus_p : EtaBranch::minus_chi_plus_p;
  return r;
}

std::pair<double, double> negativity(double eta_lt) {
  if (!(eta_lt > 0.0)) throw std::domain_error("negativity: eta_lt must be positive");
  double n = std::max(0.0, (1.0 - 2.0 * eta_lt) / (2.0 * eta_lt));
  double en = std::max(0.0, -std::log(2.0 * eta_lt));
  return {n, en};
}

EntanglementReport entanglement_report(double chi_p, double chi_m, double p_p,
                                       double p_m) {
  ReducedEta r = eta_reduced(chi_p, chi_m, p_p, p_m);
  EntanglementReport rep;
  rep.eta_lt = std::sqrt(r.eta_lt_sq);
  rep.eta_gt = std::sqrt(r.eta_gt_sq);
  rep.branch = r.branch;
  auto [n, en] = negativity(rep.eta_lt);
  rep.negativity = n;
  rep.log_negativity = en;
  rep.entangled = rep.eta_lt < 0.5;
  return rep;
}

}  // namespace qosc
