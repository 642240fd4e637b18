#ifndef QOSC_QUADRATURE_HPP
#define QOSC_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace qosc {

// Adaptive Gauss-Kronrod 15(7) integration on [a, b].  Throws
// std::runtime_error if the requested tolerance cannot be met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-11);

// Integrate over consecutive panels given by 'edges' (ascending); each panel
// is handled adaptively.  Used to pin subdivisions at the zeros of sin(kappa l)
// so the oscillation never spans a panel boundary.
double integrate_split(const std::function<double(double)>& f,
                       const std::vector<double>& edges, double abs_tol = 1e-12,
                       double rel_tol = 1e-11);

// Semi-infinite tail from 'a' by interval doubling: panels [a,2a], [2a,4a], ...
// until a panel contributes less than tail_tol relative to the accumulated
// total (the integrand must decay).
double integrate_tail_doubling(const std::function<double(double)>& f, double a,
                               double tail_tol = 1e-10);

}  // namespace qosc

#endif  // QOSC_QUADRATURE_HPP
