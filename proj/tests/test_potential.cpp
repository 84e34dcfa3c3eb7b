#include <doctest.h>

#include "lgas/fourier_field.hpp"
#include "lgas/potential.hpp"

#include <cmath>
#include <random>

using namespace lgas;

TEST_CASE("ghat table: radial formula, zero mean, nonnegative") {
    const auto& t = PotentialTables::shared(2, 64);
    const auto dc = t.constants();
    CHECK(t.ghat(0) == 0.0);
    for (std::int64_t k2 : {1, 2, 4, 5, 9, 25, 100}) {
        const double expected = dc.c_d * std::pow(2 * M_PI * std::sqrt((double)k2), -2.0);
        CHECK(t.ghat(k2) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(t.ghat(k2) >= 0.0);
    }
    // radial symmetry holds by construction: (3,4) and (5,0) share |k|^2 = 25
    CHECK(t.ghat(3 * 3 + 4 * 4) == t.ghat(25));
}

TEST_CASE("g is even and zero-mean") {
    const auto& t = PotentialTables::shared(2, 64);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int rep = 0; rep < 50; ++rep) {
        double x[2] = {u(rng), u(rng)};
        double nx[2] = {-x[0], -x[1]};
        CHECK(t.eval_g(x) == doctest::Approx(t.eval_g(nx)).epsilon(1e-12));
    }
    // spectral mean on the solver grid is g^hat(0) = 0 exactly
    FourierField g(2, 64);
    auto& c = g.mutable_coeffs();
    for_each_mode(2, 64, [&](std::size_t idx, const int*, std::int64_t k2) {
        c[idx] = t.ghat(k2);
    });
    CHECK(std::abs(g.mean()) <= 1e-10);
    // pointwise-evaluator quadrature agrees at the tabulation tolerance
    const int n = 128;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x[2] = {-0.5 + (i + 0.5) / n, -0.5 + (j + 0.5) / n};
            sum += t.eval_g(x);
        }
    CHECK(std::abs(sum / (n * n)) < 2e-4);
}

TEST_CASE("smooth remainder: continuity near the origin, high-cutoff oracle") {
    const auto& t = PotentialTables::shared(2, 128);  // fine grid 512
    double p1[2] = {1e-3, 0.0}, p2[2] = {2e-3, 0.0};
    const double r1 = t.eval_g(p1) + std::log(1e-3);
    const double r2 = t.eval_g(p2) + std::log(2e-3);
    CHECK(std::abs(r1 - r2) < 0.05);

    // direct spectral sum over all fine-grid modes (cutoff 256 per axis)
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int rep = 0; rep < 5; ++rep) {
        double x[2] = {u(rng), u(rng)};
        const double rho = std::hypot(x[0], x[1]);
        if (rho < 1e-3) continue;
        const double direct = t.smooth_part_direct(x);
        const double tabulated = t.eval_g(x) - t.singular_part(rho);
        CHECK(std::abs(direct - tabulated) < 2e-4);
    }
}

TEST_CASE("eval_g at the origin is a singular-point error") {
    const auto& t = PotentialTables::shared(2, 64);
    double zero[2] = {0.0, 0.0};
    CHECK_THROWS_AS(t.eval_g(zero), std::domain_error);
    CHECK_THROWS_AS([&] { double f[2]; t.eval_force(zero, 0.0, f); }(),
                    std::domain_error);
}

TEST_CASE("truncated potential g_(eta)") {
    const auto& t = PotentialTables::shared(2, 64);
    const double eta = 1e-2;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.5, 0.5);

    // |x| >= eta: exact agreement with g
    for (int rep = 0; rep < 40; ++rep) {
        double x[2] = {u(rng), u(rng)};
        if (std::hypot(x[0], x[1]) < eta) continue;
        CHECK(t.eval_g_eta(x, eta) == t.eval_g(x));
    }
    // x = 0 finite, equal to remainder(0) - log eta
    double zero[2] = {0.0, 0.0};
    const double v0 = t.eval_g_eta(zero, eta);
    CHECK(std::isfinite(v0));
    CHECK(v0 == doctest::Approx(t.remainder(zero) - std::log(eta)).epsilon(1e-12));
    // g_(eta) <= g inside the core
    std::uniform_real_distribution<double> core(-eta, eta);
    for (int rep = 0; rep < 40; ++rep) {
        double x[2] = {core(rng) / 2, core(rng) / 2};
        if (std::hypot(x[0], x[1]) == 0.0) continue;
        CHECK(t.eval_g_eta(x, eta) <= t.eval_g(x) + 1e-13);
    }
    // monotone in the truncation: eta' < eta => g_(eta') >= g_(eta)
    for (int rep = 0; rep < 40; ++rep) {
        double x[2] = {u(rng) * 0.05, u(rng) * 0.05};
        CHECK(t.eval_g_eta(x, 0.004) >= t.eval_g_eta(x, 0.016) - 1e-13);
    }
    CHECK_THROWS_AS(t.eval_g_eta(zero, 0.3), std::invalid_argument);
}

TEST_CASE("force: odd symmetry and finite-difference oracle") {
    const auto& t = PotentialTables::shared(2, 64);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int rep = 0; rep < 50; ++rep) {
        double x[2] = {u(rng), u(rng)};
        if (std::hypot(x[0], x[1]) < 1e-3) continue;
        double f[2], fn[2];
        double nx[2] = {-x[0], -x[1]};
        t.eval_force(x, 0.0, f);
        t.eval_force(nx, 0.0, fn);
        CHECK(std::abs(f[0] + fn[0]) < 1e-12 * std::max(1.0, std::abs(f[0])));
        CHECK(std::abs(f[1] + fn[1]) < 1e-12 * std::max(1.0, std::abs(f[1])));
    }
    // centered differences at |x| ~ 0.3; generic points so the stencil stays
    // inside one interpolation cell
    const double h = 2e-6;
    double pts[3][2] = {{0.2513771, 0.16373337}, {-0.1120313, 0.27810011},
                        {0.29517101, -0.05471213}};
    for (auto& x : pts) {
        double f[2];
        t.eval_force(x, 0.0, f);
        for (int a = 0; a < 2; ++a) {
            double xp[2] = {x[0], x[1]}, xm[2] = {x[0], x[1]};
            xp[a] += h;
            xm[a] -= h;
            const double fd = (t.eval_g(xp) - t.eval_g(xm)) / (2 * h);
            CHECK(f[a] == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("force inside the truncation core is clamped and finite") {
    const auto& t = PotentialTables::shared(2, 64);
    const double eta = 0.02;
    // remainder-gradient bound probed on a small ball
    double rem_grad_bound = 0.0;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.02, 0.02);
    for (int rep = 0; rep < 200; ++rep) {
        double x[2] = {u(rng), u(rng)};
        double f[2];
        t.eval_force(x, eta, f);
        rem_grad_bound = std::max(rem_grad_bound, std::hypot(f[0], f[1]));
    }
    for (int rep = 0; rep < 100; ++rep) {
        double x[2] = {u(rng) * 0.05, u(rng) * 0.05};  // |x| << eta
        double f[2];
        t.eval_force(x, eta, f);
        const double mag = std::hypot(f[0], f[1]);
        CHECK(std::isfinite(mag));
        const double rho = std::hypot(x[0], x[1]);
        CHECK(mag <= rho / (eta * eta) + rem_grad_bound + 1e-9);
    }
}

TEST_CASE("heat multiplier") {
    CHECK(heat_multiplier(0, 3.7, 2.0) == 1.0);
    CHECK(heat_multiplier(25, 0.0, 2.0) == 1.0);
    const double beta = 1.7;
    CHECK(heat_multiplier(1, beta / (4 * M_PI * M_PI), beta) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    // semigroup property
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 0.3);
    for (int rep = 0; rep < 50; ++rep) {
        const double t1 = u(rng), t2 = u(rng);
        for (std::int64_t k2 : {1, 4, 9}) {
            CHECK(heat_multiplier(k2, t1 + t2, beta) ==
                  doctest::Approx(heat_multiplier(k2, t1, beta) *
                                  heat_multiplier(k2, t2, beta)).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS(heat_multiplier(1, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(heat_multiplier(1, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("Parseval at grid 128^d, d = 1 and 2") {
    for (int d : {1, 2}) {
        const int n = 128;
        const auto& t = PotentialTables::shared(d, n);
        FourierField g(d, n);
        auto& c = g.mutable_coeffs();
        double spectral = 0.0;
        for_each_mode(d, n, [&](std::size_t idx, const int*, std::int64_t k2) {
            c[idx] = t.ghat(k2);
            spectral += t.ghat(k2) * t.ghat(k2);
        });
        const auto& v = g.values();
        double quad = 0.0;
        for (double x : v) quad += x * x;
        quad /= static_cast<double>(v.size());
        CHECK(quad == doctest::Approx(spectral).epsilon(1e-8));
    }
}

TEST_CASE("chi_eta_hat: mass of the truncation correction") {
    // chi_eta(x) = log(|x|/max(|x|,eta)): integral over the eta-ball is
    // -eta^d * sigma_{d-1} / d^2 (substitute r = eta u)
    for (int d : {1, 2, 3}) {
        const double eta = 0.05;
        const double sigma = (d == 1) ? 2.0 : (d == 2 ? 2 * M_PI : 4 * M_PI);
        const double expected = -std::pow(eta, d) * sigma / (d * d);
        CHECK(chi_eta_hat(d, 0, eta) == doctest::Approx(expected).epsilon(1e-8));
    }
}
