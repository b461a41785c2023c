#ifndef DIRAC_SPECFUN_HPP
#define DIRAC_SPECFUN_HPP

#include <complex>

namespace dirac::specfun {

using cplx = std::complex<double>;

// Generalized Laguerre polynomial L_n^alpha(x) by forward three-term
// recurrence.  alpha may be any real (negative orders appear on the
// irregular branches).
double laguerre(int n, double alpha, double x);

// Jacobi polynomial P_n^{(a,b)}(z); the complex overload covers the Scarf
// pattern P_n^{(-mu-i nu-1/2, -mu+i nu-1/2)}(i z).  Real inputs stay on the
// real recurrence, so the imaginary part of the result is exactly zero.
double jacobi(int n, double a, double b, double z);
cplx jacobi(int n, cplx a, cplx b, cplx z);

// Gauss hypergeometric 2F1(a,b;c;z) for real z in [0,1): power series for
// z <= 0.95, the z -> 1-z linear transformation above (needed by the
// Woods-Saxon spinor near the origin, where z approaches 1 exponentially).
// Throws NonConvergence when the tail bound cannot reach `tol` within
// `max_terms` terms.
cplx gauss_2f1(cplx a, cplx b, cplx c, double z,
               double tol = 1e-14, int max_terms = 100000);

// Principal-branch log Gamma (Lanczos, reflection for Re z < 1/2).
// Throws PoleError at non-positive real integers.
cplx log_gamma(cplx z);
double log_gamma(double x);

// arg Gamma(z) = Im log Gamma(z).
double arg_gamma(cplx z);

} // namespace dirac::specfun

#endif
