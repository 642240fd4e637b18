#ifndef QOSC_ENTANGLEMENT_HPP
#define QOSC_ENTANGLEMENT_HPP

#include <Eigen/Dense>

#include "qosc/model.hpp"

namespace qosc {

enum class EtaBranch { plus_chi_minus_p, minus_chi_plus_p, degenerate };

struct EntanglementReport {
  double eta_lt = 0.5;
  double eta_gt = 0.5;
  double negativity = 0.0;
  double log_negativity = 0.0;
  EtaBranch branch = EtaBranch::degenerate;
  bool entangled = false;
};

// p2 -> -p2 on the covariance matrix (basis chi1, p1, chi2, p2); involution.
Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& V);

// Symplectic eigenvalues of V via the block-determinant invariants
// Delta = det A + det B + 2 det C: eta^2 = [Delta +- sqrt(Delta^2-4 det V)]/2.
// Returns (eta_gt, eta_lt).
std::pair<double, double> symplectic_eigenvalues(const Eigen::Matrix4d& V);

// Independent route: absolute values of the eigenvalues of i J V; used as a
// cross-check oracle for the block-determinant formula.
std::pair<double, double> symplectic_eigenvalues_spectral(const Eigen::Matrix4d& V);

// Symmetric-state shortcut: eta_lt^2 = min{<chi+^2><p-^2>, <chi-^2><p+^2>},
// eta_gt^2 the max; branch labels which product is smaller.
struct ReducedEta {
  double eta_lt_sq = 0.25;
  double eta_gt_sq = 0.25;
  EtaBranch branch = EtaBranch::degenerate;
};
ReducedEta eta_reduced(double chi_p, double chi_m, double p_p, double p_m);

// N = max{0, (1-2 eta)/2 eta}, E_N = max{0, -ln 2 eta}.
std::pair<double, double> negativity(double eta_lt);

// Full report from the late-time pipeline moments.
EntanglementReport entanglement_report(double chi_p, double chi_m, double p_p,
                                       double p_m);

}  // namespace qosc

#endif  // QOSC_ENTANGLEMENT_HPP
