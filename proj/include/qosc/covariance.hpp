#ifndef QOSC_COVARIANCE_HPP
#define QOSC_COVARIANCE_HPP

#include <Eigen/Dense>
#include <utility>

#include "qosc/dynamics.hpp"
#include "qosc/model.hpp"

namespace qosc {

enum class MomentMethod { quadrature, closed_form };

struct ModeMoments {
  double chi_sq = 0.0;  // <chi_pm^2>(infinity)
  double p_sq = 0.0;    // <p_pm^2>(infinity)
  MomentMethod method = MomentMethod::closed_form;
  double cutoff_used = 0.0;
};

// Symmetric field correlator at separation R: sin(kappa R)/(4 pi R) *
// coth(beta kappa / 2); the R = 0 limit is kappa coth(beta kappa/2)/(4 pi),
// and beta = infinity (sentinel) drops the coth factor for kappa > 0.
double hadamard_kernel(double R, double kappa, double beta);

// Late-time moments by adaptive quadrature of the exact delay propagator
// (any temperature).  The momentum integral is cut at exactly Lambda; the
// position integral extends by interval doubling.  Panels are pinned at the
// zeros kappa = n pi / ell of the oscillatory factor.
ModeMoments mode_moments_quadrature(const ModeView& mode, const SystemParams& p);

// Same integrals with the delay influence kept to first order, matching the
// truncation under which the closed forms below are exact.
ModeMoments mode_moments_quadrature_first_order(const ModeView& mode,
                                                const SystemParams& p);

// Closed-form building blocks (zero temperature, gamma < omega_pm): the
// position integrals I1, I2 and the cutoff-regularized momentum integrals
// J1, J2 in terms of Ei.
std::pair<Complex, Complex> position_integrals_closed(const ModeView& mode,
                                                      const SystemParams& p);
std::pair<Complex, Complex> momentum_integrals_closed(const ModeView& mode,
                                                      const SystemParams& p);

// chi_sq = (c_pm / pi m) Im[I1 +- I2]; p_sq = (c_pm m / pi) Im[J1 +- J2].
ModeMoments mode_moments_closed(const ModeView& mode, const SystemParams& p);

// 4x4 late-time covariance matrix in the (chi1, p1, chi2, p2) basis.
Eigen::Matrix4d covariance_matrix_late(const SystemParams& p,
                                       MomentMethod method = MomentMethod::closed_form);

}  // namespace qosc

#endif  // QOSC_COVARIANCE_HPP
