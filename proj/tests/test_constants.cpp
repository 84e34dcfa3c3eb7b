#include <doctest.h>

#include "lgas/constants.hpp"
#include "lgas/special_functions.hpp"

#include <cmath>
#include <random>

using namespace lgas;

namespace {
const double PI = M_PI;

// the closed forms of beta_s for d = 1..17
double beta_s_closed_form(int d) {
    const double p = PI;
    switch (d) {
        case 1: return 2.0;
        case 2: return 2 * p;
        case 3: return 4 * p;
        case 4: return 2 * p * p;
        case 5: return 8 * p * p / 3;
        case 6: return p * p * p;
        case 7: return 16 * std::pow(p, 3) / 15;
        case 8: return std::pow(p, 4) / 3;
        case 9: return 32 * std::pow(p, 4) / 105;
        case 10: return std::pow(p, 5) / 12;
        case 11: return 64 * std::pow(p, 5) / 945;
        case 12: return std::pow(p, 6) / 60;
        case 13: return 128 * std::pow(p, 6) / 10395;
        case 14: return std::pow(p, 7) / 360;
        case 15: return 256 * std::pow(p, 7) / 135135;
        case 16: return std::pow(p, 8) / 2520;
        default: return 512 * std::pow(p, 8) / 2027025;
    }
}
} // namespace

TEST_CASE("dimension constants in low dimensions") {
    auto c1 = dimension_constants(1);
    CHECK(c1.c_d == doctest::Approx(PI).epsilon(1e-14));
    CHECK(c1.beta_s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c1.beta_c == 2.0);

    auto c2 = dimension_constants(2);
    CHECK(c2.c_d == doctest::Approx(2 * PI).epsilon(1e-14));
    CHECK(c2.beta_s == doctest::Approx(2 * PI).epsilon(1e-14));
    CHECK(c2.beta_c == 4.0);

    auto c3 = dimension_constants(3);
    CHECK(c3.c_d == doctest::Approx(2 * PI * PI).epsilon(1e-14));
    CHECK(c3.beta_s == doctest::Approx(4 * PI).epsilon(1e-14));
}

TEST_CASE("beta_s closed forms and threshold ordering, d = 1..17") {
    for (int d = 1; d <= 17; ++d) {
        auto c = dimension_constants(d);
        CHECK(c.c_d > 0.0);
        CHECK(c.beta_s == doctest::Approx(beta_s_closed_form(d)).epsilon(1e-12));
        if (d == 1) CHECK(c.beta_s == doctest::Approx(c.beta_c).epsilon(1e-14));
        else if (d <= 10) CHECK(c.beta_s > c.beta_c);
        else CHECK(c.beta_s < c.beta_c);
    }
}

TEST_CASE("d = 0 rejected") {
    CHECK_THROWS_AS(dimension_constants(0), std::invalid_argument);
    CHECK_THROWS_AS(log_hls_constant(0), std::invalid_argument);
}

TEST_CASE("digamma identities (oracle for the log-HLS constant)") {
    // recurrence psi(x+1) = psi(x) + 1/x
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.2, 40.0);
    for (int rep = 0; rep < 200; ++rep) {
        const double x = u(rng);
        CHECK(digamma(x + 1.0) - digamma(x) == doctest::Approx(1.0 / x).epsilon(1e-12));
    }
    // psi(1) = -gamma, psi(1/2) = psi(1) - 2 log 2
    const double euler_gamma = 0.57721566490153286;
    CHECK(digamma(1.0) == doctest::Approx(-euler_gamma).epsilon(1e-12));
    CHECK(digamma(0.5) == doctest::Approx(digamma(1.0) - 2 * std::log(2.0)).epsilon(1e-12));
    // psi(2) - psi(1) = 1 by the recurrence
    CHECK(digamma(2.0) - digamma(1.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("log-HLS constant") {
    // d=2: psi(2)-psi(1) = 1, Gamma(1)=Gamma(2)=1 -> (log pi + 1)/2
    CHECK(log_hls_constant(2) == doctest::Approx((std::log(PI) + 1.0) / 2).epsilon(1e-12));
    // d=1: (log pi)/2 + log Gamma(1/2) + (psi(1)-psi(1/2))/2 = log(2 pi)
    CHECK(log_hls_constant(1) == doctest::Approx(std::log(2 * PI)).epsilon(1e-12));
    // brute evaluation: strictly decreasing in d, positive through d = 9,
    // negative from d = 10 on
    for (int d = 1; d <= 16; ++d)
        CHECK(log_hls_constant(d) > log_hls_constant(d + 1));
    for (int d = 1; d <= 9; ++d) CHECK(log_hls_constant(d) > 0.0);
    CHECK(log_hls_constant(10) < 0.0);
}
