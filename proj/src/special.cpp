#include "adrec/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace adrec {

double erfc(double x) {
    if (!std::isfinite(x)) throw std::domain_error("erfc: non-finite argument");
    return std::erfc(x);
}

double erfcx(double x) {
    if (!std::isfinite(x)) throw std::domain_error("erfcx: non-finite argument");
    if (x < 0) {
        // reflection: erfcx(-x) = 2 exp(x^2) - erfcx(x); overflows for x << 0
        const double x2 = x * x;
        if (x2 > 700) return std::numeric_limits<double>::infinity();
        return 2.0 * std::exp(x2) - erfcx(-x);
    }
    if (x < 6.0) return std::exp(x * x) * std::erfc(x);
    // asymptotic: erfcx(x) ~ 1/(x sqrt(pi)) sum_k (-1)^k (2k-1)!!/(2x^2)^k
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        term *= -(2.0 * k - 1.0) * inv2x2;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / (x * std::sqrt(M_PI));
}

namespace {

// exp(-x) I0(x), exp(-x) I1(x) for x >= 0.
double i0_scaled(double x) {
    if (x < 15.0) {
        double term = 1.0, sum = 1.0;
        const double q = 0.25 * x * x;
        for (int k = 1; k < 80; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum * std::exp(-x);
    }
    // asymptotic with mu = 0
    const double inv8x = 1.0 / (8.0 * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 20; ++k) {
        const double mu = 0.0;
        term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) * inv8x / k;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

double i1_scaled(double x) {
    if (x == 0) return 0.0;
    if (x < 15.0) {
        double term = 0.5 * x, sum = term;
        const double q = 0.25 * x * x;
        for (int k = 1; k < 80; ++k) {
            term *= q / (static_cast<double>(k) * (k + 1.0));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum * std::exp(-x);
    }
    const double inv8x = 1.0 / (8.0 * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 20; ++k) {
        const double mu = 4.0;
        term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) * inv8x / k;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

}  // namespace

double bessel_i_scaled(int n, double x) {
    if (x < 0) throw std::domain_error("bessel_i_scaled: x must be >= 0");
    n = std::abs(n);
    if (x == 0) return n == 0 ? 1.0 : 0.0;
    if (n == 0) return i0_scaled(x);
    if (n == 1) return i1_scaled(x);
    // Miller backward recurrence: I_{k-1} = I_{k+1} + (2k/x) I_k, normalized
    // against I0.  Recurrence is run on arbitrary-scale values with periodic
    // rescaling to dodge overflow.
    const int start = n + 1 + static_cast<int>(2.0 * std::sqrt(40.0 * n + x));
    double ip1 = 0.0, ik = 1e-280, target = 0.0;
    for (int k = start; k >= 1; --k) {
        const double im1 = ip1 + (2.0 * k / x) * ik;
        ip1 = ik;
        ik = im1;
        if (k - 1 == n) target = ik;
        if (std::abs(ik) > 1e260) {
            ik *= 1e-260;
            ip1 *= 1e-260;
            target *= 1e-260;
        }
    }
    return target / ik * i0_scaled(x);
}

double log_bessel_i(int n, double x) {
    if (x < 0) throw std::domain_error("log_bessel_i: x must be >= 0");
    n = std::abs(n);
    if (x == 0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    const double scaled = bessel_i_scaled(n, x);
    if (scaled > 0) return std::log(scaled) + x;
    // high order / small argument: scaled form underflowed, use the series
    // I_n(x) = (x/2)^n/n! sum_k t_k,  t_0 = 1, t_k = t_{k-1} (x^2/4)/(k(n+k))
    double term = 1.0, sum = 1.0;
    const double q = 0.25 * x * x;
    for (int k = 1; k < 10000; ++k) {
        term *= q / (static_cast<double>(k) * (n + static_cast<double>(k)));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return n * std::log(0.5 * x) - std::lgamma(n + 1.0) + std::log(sum);
}

double poisson_pmf(long n, double mu) {
    if (mu < 0) throw std::domain_error("poisson_pmf: mu must be >= 0");
    if (n < 0) return 0.0;
    if (mu == 0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(mu) - mu - std::lgamma(n + 1.0));
}

double poisson_cdf(long n, double mu) {
    if (mu < 0) throw std::domain_error("poisson_cdf: mu must be >= 0");
    if (n < 0) return 0.0;
    if (mu == 0) return 1.0;
    if (n > mu + 40.0 * std::sqrt(mu) + 60.0) return 1.0;  // upper tail underflows
    // sum downward from n: p(k-1) = p(k) * k / mu, stable for both tails
    double term = poisson_pmf(n, mu);
    double sum = term;
    for (long k = n; k >= 1; --k) {
        term *= k / mu;
        sum += term;
        if (k < mu && term < 1e-18 * sum) break;
    }
    return std::min(sum, 1.0);
}

double skellam_pmf(long n, double mu1, double mu2) {
    if (mu1 < 0 || mu2 < 0) throw std::domain_error("skellam_pmf: rates must be >= 0");
    if (mu1 == 0 && mu2 == 0) return n == 0 ? 1.0 : 0.0;
    if (mu2 == 0) return poisson_pmf(n, mu1);
    if (mu1 == 0) return poisson_pmf(-n, mu2);
    const double logp = -(mu1 + mu2) + 0.5 * n * std::log(mu1 / mu2) +
                        log_bessel_i(static_cast<int>(std::labs(n)),
                                     2.0 * std::sqrt(mu1 * mu2));
    return std::exp(logp);
}

double skellam_cdf(long n, double mu1, double mu2) {
    if (mu1 < 0 || mu2 < 0) throw std::domain_error("skellam_cdf: rates must be >= 0");
    if (mu1 == 0 && mu2 == 0) return n >= 0 ? 1.0 : 0.0;
    if (mu2 == 0) return poisson_cdf(n, mu1);
    if (mu1 == 0) return 1.0 - poisson_cdf(-n - 1, mu2);
    const double mean = mu1 - mu2;
    const double span = 40.0 * std::sqrt(mu1 + mu2 + 1.0) + 60.0;
    const long floor_k = static_cast<long>(std::floor(mean - span));
    if (n < floor_k) return 0.0;  // below the representable mass
    if (n > mean + span) return 1.0;  // upper tail is below double precision
    double sum = 0.0;
    for (long k = n; k >= floor_k; --k) {
        const double t = skellam_pmf(k, mu1, mu2);
        sum += t;
        if (k < mean && t < 1e-17 * sum + 1e-300) break;
    }
    return std::min(std::max(sum, 0.0), 1.0);
}

}  // namespace adrec
