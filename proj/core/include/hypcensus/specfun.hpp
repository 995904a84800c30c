#ifndef HYPCENSUS_SPECFUN_HPP_
#define HYPCENSUS_SPECFUN_HPP_

#include <complex>
#include <functional>

namespace hypcensus {

/// Lobachevsky function Lambda(theta) = -int_0^theta log|2 sin t| dt.
/// Odd, pi-periodic; accurate to ~1e-13 for any finite argument.
double lobachevsky(double theta);

/// Li2(e^{iz}) for real z. Real part is the closed form
/// pi^2/6 - z(2pi - z)/4 on [0, 2pi]; imaginary part is 2*Lambda(z/2).
std::complex<double> dilog_unit_circle(double z);

/// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute
/// tolerance tol. Throws NonConvergence when the evaluation budget is
/// exhausted first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, long max_evals = 1000000);

}  // namespace hypcensus

#endif
