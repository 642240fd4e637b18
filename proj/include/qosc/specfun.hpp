#ifndef QOSC_SPECFUN_HPP
#define QOSC_SPECFUN_HPP

#include <complex>

namespace qosc {

using Complex = std::complex<double>;

namespace constants {
// Euler-Mascheroni constant, needed by the small-argument expansion of Ei
// and by the cutoff logarithms in the critical-separation formulas.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double pi = 3.14159265358979323846264338327950288;
}  // namespace constants

// Exponential integral Ei(z), principal branch, cut along the negative real
// axis.  Real x > 0 gives the usual principal-value Ei(x); real x < 0 gives
// the real value -E1(-x).  Throws std::domain_error at z = 0.
Complex exp_integral_ei(Complex z);

// Lambert W, branches 0 and -1.  The returned w satisfies w e^w = z to
// relative residual <= 1e-12.  Branch -1 is the real branch on (-1/e, 0);
// requesting it elsewhere throws std::domain_error.
Complex lambert_w(int branch, Complex z);

// Principal solution of w e^w = e^a for real a, i.e. W0(e^a), computed from
// w + ln w = a so that a >> 700 does not overflow.
double lambert_w0_exp(double a);

// Principal solution of w e^w = -e^a (argument on the negative real axis
// below -1/e): the complex root with Im w in (0, pi), from w + Log w = a + i pi.
Complex lambert_w0_neg_exp(double a);

// Inverse cotangent with range (0, pi): arccot(0) = pi/2, continuous through 0.
double arccot(double x);

}  // namespace qosc

#endif  // QOSC_SPECFUN_HPP
