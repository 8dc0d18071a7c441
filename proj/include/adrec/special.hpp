#pragma once

#include <complex>

namespace adrec {

using Complex = std::complex<double>;

// Complementary error function and its scaled variant exp(x^2) erfc(x).
// erfcx stays finite for large positive x where erfc underflows.
double erfc(double x);
double erfcx(double x);

// Modified Bessel function of the first kind, scaled: exp(-x) I_n(x), x >= 0.
double bessel_i_scaled(int n, double x);

// log I_n(x), n >= 0, x >= 0.  Usable far past the range where I_n overflows
// or the scaled form underflows.
double log_bessel_i(int n, double x);

// Skellam distribution (difference of two independent Poissons with means
// mu1, mu2 >= 0).  mu2 == 0 degenerates to a plain Poisson, mu1 == 0 to a
// negated Poisson.
double skellam_pmf(long n, double mu1, double mu2);
double skellam_cdf(long n, double mu1, double mu2);  // P[N <= n]

double poisson_pmf(long n, double mu);
double poisson_cdf(long n, double mu);  // P[N <= n]

}  // namespace adrec
