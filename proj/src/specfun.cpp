#include "qosc/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qosc {

namespace {

// Ei power series: gamma_E + ln z + sum z^n/(n n!).  Reliable while the
// partial sums do not dwarf the result, i.e. near the positive real axis
// or for small |z|.
Complex ei_series(Complex z) {
  Complex sum = 0.0;
  Complex term = 1.0;
  for (int n = 1; n < 400; ++n) {
    term *= z / static_cast<double>(n);
    Complex add = term / static_cast<double>(n);
    sum += add;
    if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  // Principal value on the negative real axis: ln|z| with no imaginary part.
  Complex logz = (z.imag() == 0.0 && z.real() < 0.0)
                     ? Complex(std::log(-z.real()), 0.0)
                     : std::log(z);
  return constants::euler_gamma + logz + sum;
}

// E1(w) power series, w off the negative real axis.
Complex e1_series(Complex w) {
  Complex sum = 0.0;
  Complex term = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= -w / static_cast<double>(n);
    Complex add = -term / static_cast<double>(n);
    sum += add;
    if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return -constants::euler_gamma - std::log(w) + sum;
}

// E1(w) by the standard continued fraction (modified Lentz), good for
// moderately large |w| away from the negative real axis.
Complex e1_contfrac(Complex w) {
  const double tiny = 1e-300;
  Complex b = w + 1.0;
  Complex c = 1.0 / tiny;
  Complex d = 1.0 / b;
  Complex h = d;
  for (int n = 1; n < 400; ++n) {
    Complex a = -static_cast<double>(n) * static_cast<double>(n);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    Complex delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-w) * h;
}

// Asymptotic series e^z/z sum k!/z^k with optimal truncation; used near the
// positive real axis for |z| > 30 where the power series loses accuracy.
Complex ei_asymptotic(Complex z) {
  Complex sum = 1.0;
  Complex term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= static_cast<double>(k) / z;
    double mag = std::abs(term);
    if (mag > prev) break;  // divergent tail reached
    sum += term;
    prev = mag;
    if (mag < 1e-18) break;
  }
  Complex val = std::exp(z) / z * sum;
  if (z.imag() > 0.0)
    val += Complex(0.0, constants::pi);
  else if (z.imag() < 0.0)
    val -= Complex(0.0, constants::pi);
  return val;
}

double sgn_im(Complex z) { return z.imag() > 0.0 ? 1.0 : (z.imag() < 0.0 ? -1.0 : 0.0); }

}  // namespace

Complex exp_integral_ei(Complex z) {
  if (z == Complex(0.0, 0.0))
    throw std::domain_error("Ei: logarithmic singularity at z = 0");
  double r = std::abs(z);
  if (r <= 4.0) return ei_series(z);

  // Sector within pi/4 of the positive real axis: cancellation in the power
  // series stays mild, switch to the asymptotic form beyond |z| = 30.
  if (std::abs(z.imag()) <= z.real()) {
    return (r <= 30.0) ? ei_series(z) : ei_asymptotic(z);
  }

  // Everywhere else go through E1: Ei(z) = -E1(-z) + i pi sgn(Im z).
  Complex w = -z;  // Re w > -|Im w|, safely off E1's cut for our sector
  Complex e1 = (std::abs(w) <= 3.0) ? e1_series(w) : e1_contfrac(w);
  return -e1 + Complex(0.0, constants::pi * sgn_im(z));
}

Complex lambert_w(int branch, Complex z) {
  if (branch != 0 && branch != -1)
    throw std::domain_error("lambert_w: only branches 0 and -1 supported");
  const double inv_e = 0.36787944117144233;

  if (branch == -1) {
    if (z.imag() != 0.0 || z.real() >= 0.0 || z.real() <= -inv_e)
      throw std::domain_error("lambert_w: branch -1 requires real z in (-1/e, 0)");
    double x = z.real();
    // seed from the asymptotic form near 0-, then Halley
    double l1 = std::log(-x);
    double w = l1 - std::log(-l1);
    for (int it = 0; it < 60; ++it) {
      double ew = std::exp(w);
      double f = w * ew - x;
      double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
      double dw = f / denom;
      w -= dw;
      if (std::abs(dw) < 1e-15 * (1.0 + std::abs(w))) break;
    }
    if (std::abs(w * std::exp(w) - x) > 1e-12 * std::abs(x))
      throw std::runtime_error("lambert_w: branch -1 iteration did not converge");
    return Complex(w, 0.0);
  }

  if (z == Complex(0.0, 0.0)) return 0.0;

  // Seed for the principal branch.
  Complex w;
  double r = std::abs(z);
  if (r < 0.3) {
    w = z * (1.0 - z + 1.5 * z * z);  // series about 0
  } else if (std::abs(z + inv_e) < 0.2) {
    Complex p = std::sqrt(2.0 * (std::exp(1.0) * z + 1.0));
    w = -1.0 + p - p * p / 3.0;  // branch-point expansion
  } else {
    Complex l1 = std::log(z);
    if (std::abs(l1) < 1.0) {
      w = 0.56714329040978384;  // Omega constant; |z| ~ 1 degenerates log log
    } else {
      Complex l2 = std::log(l1);
      w = l1 - l2 + l2 / l1;
    }
  }
  for (int it = 0; it < 80; ++it) {
    Complex ew = std::exp(w);
    Complex f = w * ew - z;
    Complex denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    Complex dw = f / denom;
    w -= dw;
    if (std::abs(dw) < 1e-15 * (1.0 + std::abs(w))) break;
  }
  if (std::abs(w * std::exp(w) - z) > 1e-12 * std::abs(z))
    throw std::runtime_error("lambert_w: iteration did not converge");
  return w;
}

double lambert_w0_exp(double a) {
  // Solve w + ln w = a; for a <= 0 the plain evaluation is safe.
  if (a < 500.0) return lambert_w(0, std::exp(a)).real();
  double w = a - std::log(a);
  for (int it = 0; it < 60; ++it) {
    double f = w + std::log(w) - a;
    double dw = f / (1.0 + 1.0 / w);
    w -= dw;
    if (std::abs(dw) < 1e-15 * w) break;
  }
  return w;
}

Complex lambert_w0_neg_exp(double a) {
  // Solve w + Log w = a + i pi with Im w in (0, pi).
  Complex target(a, constants::pi);
  Complex w = (a > 1.0) ? target - std::log(target) : Complex(0.3, 1.5);
  for (int it = 0; it < 80; ++it) {
    Complex f = w + std::log(w) - target;
    Complex dw = f / (1.0 + 1.0 / w);
    w -= dw;
    if (std::abs(dw) < 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double arccot(double x) { return constants::pi / 2.0 - std::atan(x); }

}  // namespace qosc
