#include <cmath>

#include "adrec/special.hpp"
#include "doctest.h"

using adrec::bessel_i_scaled;
using adrec::erfcx;
using adrec::log_bessel_i;
using adrec::poisson_cdf;
using adrec::poisson_pmf;
using adrec::skellam_cdf;
using adrec::skellam_pmf;

TEST_CASE("erfc basics and reference value") {
    CHECK(adrec::erfc(0.0) == 1.0);
    for (double x : {0.1, 0.7, 1.3, 2.9, 4.2})
        CHECK(adrec::erfc(-x) ==
              doctest::Approx(2.0 - adrec::erfc(x)).epsilon(1e-14));
    CHECK(adrec::erfc(0.39528) ==
          doctest::Approx(0.57615466552109).epsilon(1e-12));
    CHECK_THROWS_AS(adrec::erfc(std::nan("")), std::domain_error);
}

TEST_CASE("erfcx matches erfc in the overlap and is smooth at the split") {
    CHECK(erfcx(0.0) == 1.0);
    for (double x : {0.5, 2.0, 5.0, 5.9})
        CHECK(erfcx(x) * std::exp(-x * x) ==
              doctest::Approx(adrec::erfc(x)).epsilon(1e-12));
    // both sides of the internal branch switch against reference values
    CHECK(erfcx(5.999) == doctest::Approx(0.092791630568857).epsilon(1e-12));
    CHECK(erfcx(6.001) == doctest::Approx(0.092761509861114).epsilon(1e-12));
    // reflection
    CHECK(erfcx(-1.0) ==
          doctest::Approx(2.0 * std::exp(1.0) - erfcx(1.0)).epsilon(1e-13));
    // large argument stays finite and positive
    CHECK(erfcx(1e4) > 0);
    CHECK(erfcx(1e4) < 1e-4);
}

TEST_CASE("scaled bessel reference values") {
    CHECK(bessel_i_scaled(0, 0.0) == 1.0);
    CHECK(bessel_i_scaled(3, 0.0) == 0.0);
    CHECK(bessel_i_scaled(0, 2.0) ==
          doctest::Approx(0.30850832255367).epsilon(1e-10));
    CHECK(bessel_i_scaled(5, 20.0) ==
          doctest::Approx(0.047444442493389).epsilon(1e-10));
    CHECK(bessel_i_scaled(0, 700.0) ==
          doctest::Approx(0.015081295651531).epsilon(1e-10));
    CHECK(bessel_i_scaled(-5, 20.0) == bessel_i_scaled(5, 20.0));
    CHECK_THROWS_AS(bessel_i_scaled(0, -1.0), std::domain_error);
}

TEST_CASE("scaled bessel is monotone in order") {
    for (double x : {0.5, 2.0, 10.0, 50.0, 300.0}) {
        double prev = bessel_i_scaled(0, x);
        for (int n = 1; n <= 12; ++n) {
            const double cur = bessel_i_scaled(n, x);
            CHECK(cur <= prev * (1 + 1e-12));
            prev = cur;
        }
    }
}

TEST_CASE("log bessel covers extreme ranges") {
    CHECK(log_bessel_i(50, 2.0) ==
          doctest::Approx(-148.45816280362).epsilon(1e-10));
    CHECK(log_bessel_i(0, 1000.0) ==
          doctest::Approx(995.62730888987).epsilon(1e-10));
    CHECK(log_bessel_i(0, 0.0) == 0.0);
    CHECK(std::isinf(log_bessel_i(3, 0.0)));
}

TEST_CASE("skellam pmf reference and degeneracies") {
    CHECK(skellam_pmf(0, 1.0, 1.0) ==
          doctest::Approx(0.30850832255367).epsilon(1e-10));
    for (long k = -2; k <= 5; ++k)
        CHECK(skellam_pmf(k, 2.5, 0.0) ==
              doctest::Approx(poisson_pmf(k, 2.5)).epsilon(1e-13));
    CHECK(skellam_pmf(0, 0.0, 0.0) == 1.0);
    CHECK(skellam_pmf(1, 0.0, 0.0) == 0.0);
    CHECK_THROWS_AS(skellam_pmf(0, -1.0, 1.0), std::domain_error);
}

TEST_CASE("skellam exchange symmetry") {
    for (long n : {-7L, -1L, 0L, 2L, 9L})
        CHECK(skellam_pmf(n, 3.2, 0.7) ==
              doctest::Approx(skellam_pmf(-n, 0.7, 3.2)).epsilon(1e-12));
}

TEST_CASE("skellam pmf normalizes") {
    const double pairs[][2] = {{0.3, 0.9}, {4.0, 2.0}, {25.0, 60.0}, {97.0, 3.0}};
    for (const auto& mu : pairs) {
        const double span = mu[0] + mu[1] + 40.0 * std::sqrt(mu[0] + mu[1] + 1.0);
        const long K = static_cast<long>(span) + 1;
        double total = 0.0;
        for (long n = -K; n <= K; ++n) total += skellam_pmf(n, mu[0], mu[1]);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("skellam cdf reference, symmetry, monotonicity") {
    CHECK(skellam_cdf(-3, 2.0, 0.5) ==
          doctest::Approx(0.0024705085232580).epsilon(1e-9));
    CHECK(skellam_cdf(0, 1.0, 1.0) ==
          doctest::Approx(0.5 + skellam_pmf(0, 1.0, 1.0) / 2).epsilon(1e-9));
    const long hi = static_cast<long>(3.0 + 40.0 * std::sqrt(3.0));
    CHECK(skellam_cdf(hi, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    double prev = 0.0;
    for (long n = -15; n <= 15; ++n) {
        const double c = skellam_cdf(n, 4.0, 2.0);
        CHECK(c >= prev - 1e-15);
        prev = c;
    }
    for (long n = -1; n <= 8; ++n)
        CHECK(skellam_cdf(n, 3.0, 0.0) ==
              doctest::Approx(poisson_cdf(n, 3.0)).epsilon(1e-13));
}

TEST_CASE("poisson cdf reference and edge cases") {
    CHECK(poisson_cdf(3, 2.5) == doctest::Approx(0.75757613313307).epsilon(1e-11));
    CHECK(poisson_cdf(5, 0.0) == 1.0);
    CHECK(poisson_cdf(-1, 2.0) == 0.0);
    CHECK_THROWS_AS(poisson_cdf(3, -0.5), std::domain_error);
    // large-mean stability
    CHECK(poisson_cdf(1000, 1000.0) == doctest::Approx(0.5084).epsilon(1e-3));
}
