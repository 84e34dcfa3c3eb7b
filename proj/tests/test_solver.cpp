#include <doctest.h>

#include "lgas/solver.hpp"
#include "lgas/stability.hpp"
#include "lgas/steady_state.hpp"
#include "lgas/special_functions.hpp"

#include <cmath>

using namespace lgas;

namespace {

FourierField cosine(int d, int n, double amp, int k) {
    FourierField f(d, n);
    auto& v = f.mutable_values();
    std::size_t stride = 1;
    for (int a = 1; a < d; ++a) stride *= static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int j0 = static_cast<int>(i / stride);
        v[i] = 1.0 + amp * std::cos(2 * M_PI * k * (-0.5 + static_cast<double>(j0) / n));
    }
    return f;
}

double l2_diff(const FourierField& a, const FourierField& b) {
    const auto& va = a.values();
    const auto& vb = b.values();
    double s = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) s += (va[i] - vb[i]) * (va[i] - vb[i]);
    return std::sqrt(s / static_cast<double>(va.size()));
}

double mode_amp(const FourierField& f, int k_axis0) {
    const int n = f.n();
    std::size_t idx = static_cast<std::size_t>(k_axis0);
    for (int a = 1; a < f.dim(); ++a) idx *= static_cast<std::size_t>(n);
    return std::abs(f.coeffs()[idx]);
}

} // namespace

TEST_CASE("uniform state is stationary to machine precision") {
    const auto& t = PotentialTables::shared(2, 32);
    ModelParams p;
    p.d = 2; p.n = 32; p.beta = 5.0; p.dt = 1e-3;
    FourierField u = FourierField::uniform(2, 32);
    FourierField next = step(u, p, t);
    for (double v : next.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pure diffusion: exact single-mode decay") {
    const auto& t = PotentialTables::shared(2, 32);
    ModelParams p;
    p.d = 2; p.n = 32; p.beta = 3.0; p.dt = 2e-3;
    p.interaction_scale = 0.0;  // interaction multiplier zeroed
    const double eps = 0.01;
    FourierField mu = cosine(2, 32, 2 * eps, 1);
    FourierField next = step(mu, p, t);
    const double factor = std::exp(-4 * M_PI * M_PI * p.dt / p.beta);
    CHECK(mode_amp(next, 1) == doctest::Approx(eps * factor).epsilon(1e-12));
}

TEST_CASE("linearized growth rate at beta = 3 pi") {
    const auto& t = PotentialTables::shared(2, 64);
    ModelParams p;
    p.d = 2; p.n = 64; p.beta = 3 * M_PI; p.dt = 1e-4; p.t_max = 0.05;
    FourierField mu = cosine(2, 64, 2e-4, 1);
    EtdStepper st(p, t);
    auto& c = mu.mutable_coeffs();
    const int steps = 500;
    for (int s = 0; s < steps; ++s) st.advance(c, s * p.dt);
    const double lambda = eigenvalue(p.beta, 1, 2);
    CHECK(lambda == doctest::Approx(2 * M_PI - 4 * M_PI / 3).epsilon(1e-14));
    const double expected = 1e-4 * std::exp(lambda * 0.05);
    CHECK(mode_amp(mu, 1) == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("run: mass conservation, monotone free energy, stopping rules") {
    const auto& t = PotentialTables::shared(2, 32);
    ModelParams p;
    p.d = 2; p.n = 32; p.beta = 2.0; p.dt = 1e-3; p.t_max = 1.0; p.diag_dt = 0.02;
    FourierField mu = cosine(2, 32, 0.2, 1);
    Trajectory traj = run(mu, p, t, {});
    CHECK(traj.stop_reason == "t_max");
    // times strictly increasing; first snapshot of diagnostics is t = 0
    CHECK(traj.diagnostics.front().t == 0.0);
    for (std::size_t i = 1; i < traj.diagnostics.size(); ++i) {
        CHECK(traj.diagnostics[i].t > traj.diagnostics[i - 1].t);
        CHECK(std::abs(traj.diagnostics[i].mass - 1.0) <= 1e-10);
        CHECK(traj.diagnostics[i].free_energy <=
              traj.diagnostics[i - 1].free_energy + 1e-8);
    }
    // relaxation at beta = 2 < beta_s: L2 distance decays
    CHECK(l2_distance_uniform(traj.final_state) < 1e-4);

    // L2 stopping rule
    Trajectory t2 = run(mu, p, t, {StoppingRule::Kind::l2_below, 1e-3});
    CHECK(t2.stop_reason == "l2_below");
    CHECK(l2_distance_uniform(t2.final_state) <= 1e-3);

    // L1 escape rule on an unstable run
    ModelParams pu;
    pu.d = 2; pu.n = 64; pu.beta = 3 * M_PI; pu.dt = 1e-3; pu.t_max = 5.0;
    FourierField mu2 = cosine(2, 64, 0.1, 1);
    Trajectory t3 = run(mu2, pu, PotentialTables::shared(2, 64),
                        {StoppingRule::Kind::l1_above, 0.5});
    CHECK(t3.stop_reason == "l1_above");
    CHECK(l1_distance_uniform(t3.final_state) >= 0.5);
}

TEST_CASE("relaxation rate matches the linear eigenvalue") {
    // beta = 2: |lambda_{beta,1}| = 4 pi^2 / beta - 2 pi
    const auto& t = PotentialTables::shared(2, 64);
    ModelParams p;
    p.d = 2; p.n = 64; p.beta = 2.0; p.dt = 2e-4; p.t_max = 0.4; p.diag_dt = 0.02;
    FourierField mu = cosine(2, 64, 0.1, 1);
    Trajectory traj = run(mu, p, t, {});
    std::vector<double> ts, logs;
    for (const auto& row : traj.diagnostics) {
        if (row.t < 0.1 || row.l2_dist < 1e-12) continue;
        ts.push_back(row.t);
        logs.push_back(std::log(row.l2_dist));
    }
    REQUIRE(ts.size() >= 4);
    const double rate = -linear_fit(ts, logs).slope;
    const double expected = 4 * M_PI * M_PI / p.beta - 2 * M_PI;
    CHECK(rate == doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("second-order convergence and semigroup consistency") {
    const auto& t = PotentialTables::shared(2, 64);
    auto advance_many = [&](double dt, double T) {
        ModelParams p;
        p.d = 2; p.n = 64; p.beta = 3 * M_PI; p.dt = dt; p.t_max = T;
        FourierField mu = cosine(2, 64, 0.1, 1);
        EtdStepper st(p, t);
        auto& c = mu.mutable_coeffs();
        const int steps = static_cast<int>(std::llround(T / dt));
        for (int s = 0; s < steps; ++s) st.advance(c, s * dt);
        return mu;
    };
    const double T = 0.04;
    FourierField ref = advance_many(T / 160, T);
    const double e1 = l2_diff(advance_many(T / 20, T), ref);
    const double e2 = l2_diff(advance_many(T / 40, T), ref);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);

    // two half steps vs one step: O(dt^3) local error
    auto one_vs_two = [&](double dt) {
        ModelParams p;
        p.d = 2; p.n = 64; p.beta = 3 * M_PI; p.dt = dt; p.t_max = dt;
        FourierField a = cosine(2, 64, 0.1, 1);
        FourierField full = step(a, p, t);
        p.dt = dt / 2;
        FourierField half = step(step(a, p, t), p, t);
        return l2_diff(full, half);
    };
    const double d1 = one_vs_two(2e-3);
    const double d2 = one_vs_two(1e-3);
    CHECK(d1 / d2 > 6.0);   // ~8 for a third-order local error
    CHECK(d1 / d2 < 10.0);
}

TEST_CASE("blow-up detection on concentrated low-temperature data") {
    const auto& t = PotentialTables::shared(2, 256);
    ModelParams p;
    p.d = 2; p.n = 256; p.beta = 10.0; p.dt = 1e-4; p.t_max = 1.0;
    FourierField mu = bump_family(0.2, 2, 256);
    Trajectory traj = run(mu, p, t, {});
    CHECK(traj.stop_reason == "blow_up");
    CHECK(traj.final_time < 1.0);
    // step() reports the same condition as an exception
    ModelParams ps = p;
    FourierField state = traj.final_state;
    CHECK_THROWS_AS([&] {
        for (int i = 0; i < 50; ++i) state = step(state, ps, t);
    }(), blowup_error);
}

TEST_CASE("Kirkwood-Monroe fixed point") {
    const auto& t = PotentialTables::shared(2, 64);
    // uniform is a fixed point for any beta
    auto res_u = kirkwood_monroe_fixed_point(FourierField::uniform(2, 64), 7.0, t);
    CHECK(res_u.converged);
    CHECK(res_u.residual <= 1e-14);
    CHECK(res_u.iterations == 1);

    // contraction regime: beta = 2 pulls a perturbed start back to uniform
    FourierField mu0 = cosine(2, 64, 0.3, 1);
    auto res2 = kirkwood_monroe_fixed_point(mu0, 2.0, t, 0.5, 1e-10);
    CHECK(res2.converged);
    CHECK(l2_distance_uniform(res2.state) <= 1e-9);

    // beta = 8 > beta_s: nonuniform state with negative free energy
    FourierField mu1 = cosine(2, 64, 0.5, 1);
    auto res8 = kirkwood_monroe_fixed_point(mu1, 8.0, t, 0.5, 1e-10);
    CHECK(res8.converged);
    CHECK(l2_distance_uniform(res8.state) > 0.5);
    CHECK(free_energy(res8.state, 8.0, t) < 0.0);
    // the dissipation functional vanishes at fixed points
    CHECK(dissipation(res8.state, 8.0, t) <= 10.0 * 1e-10);
}

TEST_CASE("rate functional Euler-Lagrange iteration") {
    const auto& t = PotentialTables::shared(2, 64);
    FourierField unif = FourierField::uniform(2, 64);

    // starting at nu = mu is already fixed
    auto res0 = rate_functional_el_iteration(unif, 1.0, 0.05, t, 1e-10, &unif);
    CHECK(res0.converged);
    CHECK(res0.returned_to_mu);
    CHECK(res0.iterations <= 2);

    // high temperature: perturbed start returns to mu
    FourierField start = cosine(2, 64, 0.2, 1);
    auto res1 = rate_functional_el_iteration(unif, 1.0, 0.05, t, 1e-10, &start);
    CHECK(res1.converged);
    CHECK(res1.returned_to_mu);

    // low temperature: a distinct fixed point appears, consistent with the
    // Kirkwood-Monroe branch for the truncated potential
    FourierField start8 = cosine(2, 64, 0.5, 1);
    auto res8 = rate_functional_el_iteration(unif, 8.0, 0.05, t, 1e-9, &start8);
    CHECK(res8.converged);
    CHECK(!res8.returned_to_mu);
    CHECK(res8.distance_to_mu > 0.5);
    auto km = kirkwood_monroe_fixed_point(cosine(2, 64, 0.5, 1), 8.0, t, 0.5, 1e-10);
    CHECK(l2_diff(res8.state, km.state) < 0.2);
}

TEST_CASE("bump family") {
    FourierField phi = bump_family(0.2, 2, 512);
    CHECK(phi.mean() == doctest::Approx(1.0).epsilon(1e-14));
    // support inside B(0, lambda/8)
    const auto& v = phi.values();
    const int n = phi.n();
    for (int i = 0; i < n; i += 7)
        for (int j = 0; j < n; j += 7) {
            const double x = -0.5 + static_cast<double>(i) / n;
            const double y = -0.5 + static_cast<double>(j) / n;
            if (std::hypot(x, y) > 0.2 / 8)
                CHECK(v[(std::size_t)i * n + j] == 0.0);
        }
    CHECK_THROWS_WITH_AS(bump_family(0.05, 2, 128), doctest::Contains("need n >="),
                         std::invalid_argument);

    // free-energy scaling slope: E(phi_l2) - E(phi_l1) ~ (beta-beta_c)/(2 beta) log(l2/l1)
    const auto& t = PotentialTables::shared(2, 512);
    const double beta = 6.0;
    const double e1 = free_energy(bump_family(0.2, 2, 512), beta, t);
    const double e2 = free_energy(bump_family(0.1, 2, 512), beta, t);
    const double expected = (beta - 4.0) / (2 * beta) * std::log(0.1 / 0.2);
    CHECK(e2 - e1 == doctest::Approx(expected).epsilon(0.2));
}

TEST_CASE("mass/temperature rescaling") {
    const auto& t = PotentialTables::shared(2, 64);
    FourierField mu = cosine(2, 64, 0.2, 1);
    // mass 1: identity
    auto r1 = rescale_mass(mu, 3.0);
    CHECK(r1.beta_tilde == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(l2_diff(r1.normalized, mu) < 1e-14);
    // mass 2 at beta 3 -> beta_tilde 6
    FourierField mu2 = mu;
    for (double& x : mu2.mutable_values()) x *= 2.0;
    auto r2 = rescale_mass(mu2, 3.0);
    CHECK(r2.beta_tilde == doctest::Approx(6.0).epsilon(1e-15));

    // trajectory equivalence: nu^t = mu^{t/m}/m at matched times
    ModelParams pn;
    pn.d = 2; pn.n = 64; pn.beta = r2.beta_tilde; pn.dt = 1e-3; pn.t_max = 0.3;
    ModelParams pm;
    pm.d = 2; pm.n = 64; pm.beta = 3.0; pm.dt = pn.dt / 2.0; pm.t_max = 0.15;
    EtdStepper stn(pn, t), stm(pm, t);
    FourierField nu = r2.normalized, m_run = mu2;
    for (int block = 0; block < 3; ++block) {
        for (int s = 0; s < 100; ++s) {
            stn.advance(nu, 0.0);
            stm.advance(m_run, 0.0);
        }
        FourierField rescaled = m_run;
        for (double& x : rescaled.mutable_values()) x /= 2.0;
        CHECK(l2_diff(nu, rescaled) < 1e-6);
    }

    FourierField zero(2, 64, 0.0);
    CHECK_THROWS_AS(rescale_mass(zero, 1.0), std::invalid_argument);
}

TEST_CASE("free-energy dissipation identity along a run") {
    const auto& t = PotentialTables::shared(2, 64);
    ModelParams p;
    p.d = 2; p.n = 64; p.beta = 2.0; p.dt = 1e-4; p.t_max = 0.2; p.diag_dt = 0.005;
    FourierField mu = cosine(2, 64, 0.2, 1);
    Trajectory traj = run(mu, p, t, {});
    // dE/dt = -D for the gradient flow (centered differences at output times)
    int checked = 0;
    for (std::size_t i = 1; i + 1 < traj.diagnostics.size(); ++i) {
        const auto& prev = traj.diagnostics[i - 1];
        const auto& cur = traj.diagnostics[i];
        const auto& next = traj.diagnostics[i + 1];
        const double dEdt = (next.free_energy - prev.free_energy) / (next.t - prev.t);
        const double rel = std::abs(dEdt + cur.dissipation) /
                           std::max(cur.dissipation, 1e-8);
        CHECK(rel <= 0.01);
        ++checked;
    }
    CHECK(checked >= 10);
}
