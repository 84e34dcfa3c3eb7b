// lgas: experiment runner for the attractive log gas toolkit.
//
// Subcommands: thresholds, solve, particles, steady, mlhls, grenier.
// Exit codes: 0 success, 1 usage/config error, 2 blow-up detected,
// 3 non-convergence.

#include "lgas/constants.hpp"
#include "lgas/functionals.hpp"
#include "lgas/particles.hpp"
#include "lgas/potential.hpp"
#include "lgas/snapshot_io.hpp"
#include "lgas/solver.hpp"
#include "lgas/stability.hpp"
#include "lgas/steady_state.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

using namespace lgas;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    int dim = 2;
    double beta = 2.0;
    int grid = 64;
    double dt = 1e-3;
    double tmax = 1.0;
    double eps = 1e-3;
    int mode_k = 1;
    int n_particles = 256;
    double eta = 1e-3;
    std::uint64_t seed = 1;
    int n_mc = 10000;
    std::string out = "";
    std::string preset = "";
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--dim", o.dim, "dimension d");
    cmd->add_option("--beta", o.beta, "inverse temperature");
    cmd->add_option("--grid", o.grid, "per-axis grid size (power of two)");
    cmd->add_option("--dt", o.dt, "time step");
    cmd->add_option("--tmax", o.tmax, "time horizon");
    cmd->add_option("--eps", o.eps, "perturbation amplitude");
    cmd->add_option("--mode-k", o.mode_k, "wave number of the seeded mode");
    cmd->add_option("--n-particles", o.n_particles, "particle count N");
    cmd->add_option("--eta", o.eta, "potential truncation radius");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--n-mc", o.n_mc, "Monte Carlo sample count / trials");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--preset", o.preset, "named preset");
    cmd->add_option("--threads", o.threads, "worker threads for sweeps");
    cmd->set_config("--config", "", "flat key=value config file");
}

fs::path ensure_out(const CommonOpts& o, const std::string& fallback) {
    fs::path dir = o.out.empty() ? fs::path("out-" + fallback) : fs::path(o.out);
    fs::create_directories(dir);
    return dir;
}

FourierField cosine_field(int d, int n, double amp, int k) {
    FourierField f(d, n);
    auto& v = f.mutable_values();
    std::size_t stride = 1;
    for (int a = 1; a < d; ++a) stride *= static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int j0 = static_cast<int>(i / stride);
        v[i] = 1.0 + amp * std::cos(2.0 * M_PI * k * (-0.5 + static_cast<double>(j0) / n));
    }
    return f;
}

// smooth random perturbation: low modes |k|_inf <= 3, scaled to the target
// L^2 distance from uniform
FourierField random_smooth_field(int d, int n, double l2_target, std::uint64_t seed) {
    FourierField f = FourierField::uniform(d, n);
    auto& c = f.mutable_coeffs();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for_each_mode(d, n, [&](std::size_t idx, const int* k, std::int64_t k2) {
        if (k2 == 0) return;
        for (int a = 0; a < d; ++a)
            if (std::abs(k[a]) > 3) return;
        int lead = 0;
        for (int a = 0; a < d; ++a)
            if (k[a] != 0) { lead = k[a]; break; }
        if (lead < 0) return;  // half-space representatives only
        c[idx] = std::complex<double>(normal(rng), normal(rng));
    });
    // mirror for realness
    const int nn = f.n();
    std::vector<std::complex<double>> copy(c);
    for_each_mode(d, n, [&](std::size_t idx, const int* k, std::int64_t) {
        std::size_t midx = 0;
        for (int a = 0; a < d; ++a) {
            int j = -k[a];
            if (j < 0) j += nn;
            midx = midx * nn + static_cast<std::size_t>(j);
        }
        if (midx != idx) c[midx] = std::conj(copy[idx]);
    });
    const double norm = l2_distance_uniform(f);
    if (norm > 0) {
        auto& cc = f.mutable_coeffs();
        for_each_mode(d, n, [&](std::size_t idx, const int*, std::int64_t k2) {
            if (k2 != 0) cc[idx] *= l2_target / norm;
        });
    }
    return f;
}

int cmd_thresholds(const CommonOpts& o, int dmin, int dmax) {
    if (dmin < 1 || dmax > 17 || dmin > dmax) {
        std::cerr << "thresholds: need 1 <= dmin <= dmax <= 17\n";
        return 1;
    }
    fs::path dir = ensure_out(o, "thresholds");
    std::ofstream csv(dir / "thresholds.csv", std::ios::binary);
    csv << "d,beta_c,beta_s,beta_0,ordering,C_d,C_d_prime\n";
    for (int d = dmin; d <= dmax; ++d) {
        ThresholdReport rep = threshold_report(d);
        csv << d << ',' << format_double(rep.beta_c) << ',' << format_double(rep.beta_s)
            << ',' << (std::isnan(rep.beta_0) ? std::string() : format_double(rep.beta_0))
            << ',' << rep.ordering << ',' << format_double(rep.contraction_c) << ','
            << format_double(rep.contraction_c_prime) << "\n";
        std::cout << "d=" << d << " beta_c=" << rep.beta_c << " beta_s=" << rep.beta_s
                  << " " << rep.ordering << "\n";
    }
    std::cout << "wrote " << (dir / "thresholds.csv").string() << "\n";
    return 0;
}

int cmd_solve(CommonOpts& o, std::string init, double lambda, double stop_l1,
              double stop_l2, double diag_dt, double snap_dt) {
    if (o.preset == "relaxation") {
        o.dim = 2; o.beta = 2.0; if (o.grid == 64) o.grid = 128;
        o.dt = 2e-4; o.tmax = 1.5; init = "random"; o.eps = 0.1;
        if (stop_l2 == 0.0) stop_l2 = 1e-7;
    } else if (o.preset == "instability") {
        o.dim = 2; o.beta = 3.0 * M_PI; if (o.grid == 64) o.grid = 128;
        o.dt = 5e-4; o.tmax = 12.0; init = "cosine";
        if (stop_l1 == 0.0) stop_l1 = 0.5;
    } else if (o.preset == "blowup") {
        o.dim = 2; o.beta = 10.0; if (o.grid == 64) o.grid = 256;
        o.dt = 1e-4; o.tmax = 2.0; init = "bump";
        if (lambda == 0.0) lambda = 0.2;
    } else if (!o.preset.empty() && o.preset != "custom") {
        std::cerr << "solve: unknown preset " << o.preset << "\n";
        return 1;
    }
    fs::path dir = ensure_out(o, "solve");
    const PotentialTables& tables = PotentialTables::shared(o.dim, o.grid);

    FourierField mu0;
    if (init == "cosine") mu0 = cosine_field(o.dim, o.grid, 2.0 * o.eps, o.mode_k);
    else if (init == "uniform") mu0 = FourierField::uniform(o.dim, o.grid);
    else if (init == "random") mu0 = random_smooth_field(o.dim, o.grid, o.eps, o.seed);
    else if (init == "bump") mu0 = bump_family(lambda, o.dim, o.grid);
    else {
        std::cerr << "solve: unknown init " << init << "\n";
        return 1;
    }

    ModelParams params;
    params.d = o.dim;
    params.beta = o.beta;
    params.n = o.grid;
    params.dt = o.dt;
    params.t_max = o.tmax;
    params.diag_dt = diag_dt;
    params.snapshot_dt = snap_dt;
    StoppingRule stop;
    if (stop_l1 > 0.0) stop = {StoppingRule::Kind::l1_above, stop_l1};
    else if (stop_l2 > 0.0) stop = {StoppingRule::Kind::l2_below, stop_l2};

    Trajectory traj = run(mu0, params, tables, stop);
    write_diagnostics_csv((dir / "diagnostics.csv").string(), traj.diagnostics);
    write_snapshot((dir / "final.lgas").string(), traj.final_state, traj.final_time);
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        std::ostringstream name;
        name << "snap" << s << ".lgas";
        write_snapshot((dir / name.str()).string(), traj.snapshots[s],
                       traj.snapshot_times[s]);
    }
    for (const auto& w : traj.warnings) std::cerr << w << "\n";
    std::cout << "stop_reason=" << traj.stop_reason << " t=" << traj.final_time
              << " steps=" << traj.steps << " l2_dist="
              << l2_distance_uniform(traj.final_state) << "\n";
    if (traj.stop_reason == "blow_up") {
        std::cerr << "blow-up detected at t = " << traj.final_time << "\n";
        return 2;
    }
    return 0;
}

int cmd_particles(CommonOpts& o, std::string n_list_str, int n_seeds,
                  double bandwidth) {
    if (o.preset == "chaos") {
        o.dim = 2; o.beta = 2.0; o.grid = 64; o.dt = 1e-3; o.tmax = 0.5;
        o.eta = 1e-3;
        if (n_list_str.empty()) n_list_str = "64,256,1024";
        if (n_seeds == 1) n_seeds = 20;
    } else if (!o.preset.empty() && o.preset != "custom") {
        std::cerr << "particles: unknown preset " << o.preset << "\n";
        return 1;
    }
    fs::path dir = ensure_out(o, "particles");
    const PotentialTables& tables = PotentialTables::shared(o.dim, o.grid);

    if (o.n_particles == 1 && n_list_str.empty()) {
        // Brownian variance report: per-axis increment variance over the run
        // vs 2 t_max / beta
        const int steps = static_cast<int>(std::llround(o.tmax / o.dt));
        std::mt19937_64 rng(o.seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        const double sigma = std::sqrt(2.0 * o.dt / o.beta);
        double sum2 = 0.0;
        std::int64_t count = 0;
        for (int trial = 0; trial < o.n_mc; ++trial) {
            for (int a = 0; a < o.dim; ++a) {
                double x = 0.0;
                for (int s = 0; s < steps; ++s) x += sigma * normal(rng);
                sum2 += x * x;
                ++count;
            }
        }
        const double var = sum2 / static_cast<double>(count);
        const double expected = 2.0 * o.dt * steps / o.beta;
        std::ofstream csv(dir / "brownian.csv", std::ios::binary);
        csv << "trials,steps,measured_variance,expected_variance,rel_error\n";
        csv << o.n_mc << ',' << steps << ',' << format_double(var) << ','
            << format_double(expected) << ','
            << format_double(std::abs(var / expected - 1.0)) << "\n";
        std::cout << "brownian variance: measured=" << var << " expected=" << expected
                  << "\n";
        return 0;
    }

    // matched PDE run for the reference density
    ModelParams params;
    params.d = o.dim;
    params.beta = o.beta;
    params.n = o.grid;
    params.dt = std::min(o.dt, 1e-3);
    params.t_max = o.tmax;
    FourierField mu0 = cosine_field(o.dim, o.grid, 0.2, 1);
    Trajectory pde = run(mu0, params, tables, {});

    std::vector<int> n_values;
    if (!n_list_str.empty()) {
        std::stringstream ss(n_list_str);
        std::string item;
        while (std::getline(ss, item, ',')) n_values.push_back(std::stoi(item));
    } else {
        n_values.push_back(o.n_particles);
    }

    const int steps = static_cast<int>(std::llround(o.tmax / o.dt));
    std::ofstream sweep_csv(dir / "chaos.csv", std::ios::binary);
    sweep_csv << "N,seed,chaos_distance,pair_energy,F_N_vs_reference\n";
    struct RowOut {
        int N;
        std::uint64_t seed;
        double dist, pe, fn;
    };
    std::vector<RowOut> rows;
    for (int N : n_values)
        for (int s = 0; s < n_seeds; ++s)
            rows.push_back({N, o.seed + static_cast<std::uint64_t>(s), 0, 0, 0});

    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            auto ens = ParticleEnsemble::iid_from_density(mu0, rows[r].N, o.beta,
                                                          o.eta, rows[r].seed);
            for (int s = 0; s < steps; ++s) sde_step(ens, o.dt, tables);
            rows[r].dist = chaos_distance(ens, pde.final_state, bandwidth);
            rows[r].pe = pair_energy(ens, tables);
            rows[r].fn = modulated_energy_truncated(ens, pde.final_state, o.eta, tables);
        }
    };
    if (o.threads <= 1) {
        work(0, rows.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (rows.size() + o.threads - 1) / o.threads;
        for (int t = 0; t < o.threads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(rows.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& r : rows)
        sweep_csv << r.N << ',' << r.seed << ',' << format_double(r.dist) << ','
                  << format_double(r.pe) << ',' << format_double(r.fn) << "\n";

    // single-N single-seed runs also emit the time series and configuration
    if (n_values.size() == 1 && n_seeds == 1) {
        auto ens = ParticleEnsemble::iid_from_density(mu0, n_values[0], o.beta,
                                                      o.eta, o.seed);
        std::vector<EnsembleDiagnosticsRow> series;
        const int record_every = std::max(1, steps / 50);
        FourierField ref = mu0;
        EtdStepper stepper(params, tables);
        for (int s = 0; s < steps; ++s) {
            sde_step(ens, o.dt, tables);
            stepper.advance(ref, s * params.dt);
            if ((s + 1) % record_every == 0) {
                EnsembleDiagnosticsRow row;
                row.t = (s + 1) * o.dt;
                row.pair_energy = pair_energy(ens, tables);
                row.modulated_energy =
                    modulated_energy_truncated(ens, ref, o.eta, tables);
                row.chaos_distance = chaos_distance(ens, ref, bandwidth);
                series.push_back(row);
            }
        }
        write_ensemble_csv((dir / "ensemble.csv").string(), series);
        write_particles_csv((dir / "particles.csv").string(), ens);
    }
    std::cout << "wrote " << (dir / "chaos.csv").string() << "\n";
    return 0;
}

int cmd_steady(CommonOpts& o, std::string beta_list_str, double damping,
               double tol, double init_amp, int max_iter) {
    if (o.preset == "steady") {
        o.dim = 2; o.beta = 8.0; if (o.grid == 64) o.grid = 128;
        init_amp = 0.5;
    } else if (!o.preset.empty() && o.preset != "custom") {
        std::cerr << "steady: unknown preset " << o.preset << "\n";
        return 1;
    }
    fs::path dir = ensure_out(o, "steady");
    const PotentialTables& tables = PotentialTables::shared(o.dim, o.grid);

    std::vector<double> betas;
    if (!beta_list_str.empty()) {
        std::stringstream ss(beta_list_str);
        std::string item;
        while (std::getline(ss, item, ',')) betas.push_back(std::stod(item));
    } else {
        betas.push_back(o.beta);
    }

    std::ofstream csv(dir / "steady.csv", std::ios::binary);
    csv << "beta,converged,iterations,residual,l2_dist_uniform,free_energy\n";
    bool all_converged = true;
    for (double beta : betas) {
        FourierField mu0 = cosine_field(o.dim, o.grid, init_amp, 1);
        FixedPointResult res =
            kirkwood_monroe_fixed_point(mu0, beta, tables, damping, tol, max_iter);
        all_converged = all_converged && res.converged;
        const double dist = l2_distance_uniform(res.state);
        const double fe = free_energy(res.state, beta, tables);
        csv << format_double(beta) << ',' << (res.converged ? 1 : 0) << ','
            << res.iterations << ',' << format_double(res.residual) << ','
            << format_double(dist) << ',' << format_double(fe) << "\n";
        std::cout << "beta=" << beta << " converged=" << res.converged
                  << " l2_dist=" << dist << " E=" << fe << "\n";
        if (betas.size() == 1)
            write_snapshot((dir / "steady.lgas").string(), res.state, 0.0);
    }
    if (!all_converged) {
        std::cerr << "steady: fixed-point iteration did not converge\n";
        return 3;
    }
    return 0;
}

int cmd_mlhls(CommonOpts& o, std::string n_list_str, double tol) {
    if (o.preset == "mlhls") {
        o.dim = 2; o.beta = 8.0; if (o.grid == 64) o.grid = 128;
    } else if (!o.preset.empty() && o.preset != "custom") {
        std::cerr << "mlhls: unknown preset " << o.preset << "\n";
        return 1;
    }
    fs::path dir = ensure_out(o, "mlhls");
    const PotentialTables& tables = PotentialTables::shared(o.dim, o.grid);

    FourierField mu0 = cosine_field(o.dim, o.grid, 0.5, 1);
    FixedPointResult res =
        kirkwood_monroe_fixed_point(mu0, o.beta, tables, 0.5, tol, 20000);
    if (!res.converged) {
        std::cerr << "mlhls: steady-state iteration did not converge\n";
        return 3;
    }
    const double fe = free_energy(res.state, o.beta, tables);
    if (!(fe < 0.0)) {
        std::cerr << "mlhls: no valid mu_min at beta = " << o.beta
                  << " (free energy " << fe << " is not negative); "
                  << "the counterexample needs beta above min(beta_c, beta_s)\n";
        return 1;
    }

    std::vector<long> ns;
    if (n_list_str.empty()) n_list_str = "4,16,64,256,1024,4096";
    {
        std::stringstream ss(n_list_str);
        std::string item;
        while (std::getline(ss, item, ',')) ns.push_back(std::stol(item));
    }
    std::ofstream csv(dir / "mlhls.csv", std::ios::binary);
    csv << "N,lhs,rhs,gap,N0\n";
    for (long N : ns) {
        MlhlsCertificate cert =
            mlhls_counterexample(o.beta, o.dim, N, res.state, tables);
        csv << N << ',' << format_double(cert.lhs) << ',' << format_double(cert.rhs)
            << ',' << format_double(cert.eta_gap) << ',' << cert.n_zero << "\n";
        std::cout << "N=" << N << " lhs=" << cert.lhs << " rhs=" << cert.rhs
                  << " gap=" << cert.eta_gap << " N0=" << cert.n_zero << "\n";
    }
    return 0;
}

int cmd_grenier(CommonOpts& o, bool compare, double c0_in) {
    fs::path dir = ensure_out(o, "grenier");
    const PotentialTables& tables = PotentialTables::shared(o.dim, o.grid);
    const double lambda1 = eigenvalue(o.beta, 1, o.dim);

    double c0 = c0_in;
    if (c0 <= 0.0) {
        c0 = calibrate_instability_c0(o.beta, o.dim, {3e-3, 1e-3, 3e-4}, o.grid,
                                      o.dt, tables);
        std::cout << "calibrated C0 = " << c0 << "\n";
    }
    auto forecast = instability_time_forecast(o.beta, o.eps, o.dim, c0);
    if (forecast)
        std::cout << "forecast escape time t_eps = " << *forecast << "\n";
    else
        std::cout << "no escape within the validity window\n";

    GrenierExpansion g0 = grenier_expansion(o.beta, o.eps, o.dim, 0.0);
    std::ofstream csv(dir / "grenier.csv", std::ios::binary);
    csv << "t,nu1_amp,nu2_amp,residual_bound,solver_l2_err\n";

    FourierField state = g0.field(o.grid);
    ModelParams params;
    params.d = o.dim;
    params.beta = o.beta;
    params.n = o.grid;
    params.dt = o.dt;
    params.t_max = std::min(o.tmax, 0.95 * g0.validity_t_max);
    EtdStepper stepper(params, tables);
    const int steps = static_cast<int>(params.t_max / params.dt);
    const int sample_every = std::max(1, steps / 40);
    for (int s = 0; s <= steps; ++s) {
        if (s % sample_every == 0) {
            const double t = s * params.dt;
            GrenierExpansion g = grenier_expansion(o.beta, o.eps, o.dim, t);
            double err = 0.0;
            if (compare) {
                FourierField app = g.field(o.grid);
                const auto& va = app.values();
                const auto& vc = state.values();
                double sum = 0.0;
                for (std::size_t i = 0; i < va.size(); ++i)
                    sum += (vc[i] - va[i]) * (vc[i] - va[i]);
                err = std::sqrt(sum / static_cast<double>(va.size()));
            }
            csv << format_double(t) << ',' << format_double(g.nu1_amp) << ','
                << format_double(g.nu2_amp) << ',' << format_double(g.residual_bound)
                << ',' << format_double(err) << "\n";
        }
        if (s < steps) stepper.advance(state, s * params.dt);
    }
    std::cout << "lambda1=" << lambda1 << " validity_t_max=" << g0.validity_t_max
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "attractive log gas on the torus: PDE solver, particle system, analyzers"};
    app.require_subcommand(1);

    CommonOpts o_thr, o_solve, o_part, o_steady, o_mlhls, o_gren;

    auto* thresholds = app.add_subcommand("thresholds", "per-dimension threshold table");
    int dmin = 1, dmax = 17;
    add_common(thresholds, o_thr);
    thresholds->add_option("--dmin", dmin, "first dimension");
    thresholds->add_option("--dmax", dmax, "last dimension");

    auto* solve = app.add_subcommand("solve", "integrate the mean-field PDE");
    add_common(solve, o_solve);
    std::string init = "cosine";
    double lambda = 0.0, stop_l1 = 0.0, stop_l2 = 0.0, diag_dt = 0.0, snap_dt = 0.0;
    solve->add_option("--init", init, "initial datum: cosine|uniform|random|bump");
    solve->add_option("--lambda", lambda, "bump scale");
    solve->add_option("--stop-l1", stop_l1, "stop when ||mu-1||_L1 >= value");
    solve->add_option("--stop-l2", stop_l2, "stop when ||mu-1||_L2 <= value");
    solve->add_option("--diag-dt", diag_dt, "diagnostics cadence");
    solve->add_option("--snap-dt", snap_dt, "snapshot cadence");

    auto* particles = app.add_subcommand("particles", "overdamped Langevin ensemble");
    add_common(particles, o_part);
    std::string n_list;
    int n_seeds = 1;
    double bandwidth = 0.02;
    particles->add_option("--n-list", n_list, "comma list of N values");
    particles->add_option("--seeds", n_seeds, "number of seeds per N");
    particles->add_option("--bandwidth", bandwidth, "mollification bandwidth");

    auto* steady = app.add_subcommand("steady", "Kirkwood-Monroe fixed points");
    add_common(steady, o_steady);
    std::string beta_list;
    double damping = 0.5, tol = 1e-10, init_amp = 0.5;
    int max_iter = 20000;
    steady->add_option("--beta-list", beta_list, "comma list of betas to sweep");
    steady->add_option("--damping", damping, "damping factor in (0,1]");
    steady->add_option("--tol", tol, "residual tolerance");
    steady->add_option("--init-amp", init_amp, "cosine amplitude of the start");
    steady->add_option("--max-iter", max_iter, "iteration cap");

    auto* mlhls = app.add_subcommand("mlhls", "modulated log-HLS counterexample");
    add_common(mlhls, o_mlhls);
    std::string mlhls_n_list;
    double mlhls_tol = 1e-10;
    mlhls->add_option("--n-list", mlhls_n_list, "comma list of N values");
    mlhls->add_option("--tol", mlhls_tol, "fixed point tolerance");

    auto* grenier = app.add_subcommand("grenier", "approximate solution and forecast");
    add_common(grenier, o_gren);
    bool compare = true;
    double c0 = 0.0;
    grenier->add_flag("--compare,!--no-compare", compare, "run the solver comparison");
    grenier->add_option("--c0", c0, "forecast constant C0 (<=0 calibrates)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (thresholds->parsed()) return cmd_thresholds(o_thr, dmin, dmax);
        if (solve->parsed())
            return cmd_solve(o_solve, init, lambda, stop_l1, stop_l2, diag_dt, snap_dt);
        if (particles->parsed()) return cmd_particles(o_part, n_list, n_seeds, bandwidth);
        if (steady->parsed())
            return cmd_steady(o_steady, beta_list, damping, tol, init_amp, max_iter);
        if (mlhls->parsed()) return cmd_mlhls(o_mlhls, mlhls_n_list, mlhls_tol);
        if (grenier->parsed()) return cmd_grenier(o_gren, compare, c0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
