#include "lgas/stability.hpp"

#include "lgas/solver.hpp"
#include "lgas/special_functions.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lgas {

double eigenvalue(double beta, int k_norm, int d) {
    if (!(beta > 0.0)) throw std::invalid_argument("eigenvalue: beta must be > 0");
    if (k_norm < 1) throw std::invalid_argument("eigenvalue: |k| must be >= 1");
    const DimensionConstants dc = dimension_constants(d);
    const double tp = 2.0 * M_PI * k_norm;
    return dc.c_d * std::pow(tp, 2.0 - d) - 4.0 * M_PI * M_PI * k_norm * k_norm / beta;
}

namespace {

double sphere_area(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        default: return 4.0 * M_PI;
    }
}

// sup over eps in (0,d) of (d - eps) int_{[-1/2,1/2]^d} |z|^{-eps} dz.
// Ball of radius 1/2 analytic; the corner region numeric (empty for d = 1).
double contraction_constant(int d) {
    const int grid = (d == 1) ? 0 : (d == 2 ? 256 : 48);
    std::vector<double> corner_logs;  // log|z| samples outside the ball
    if (d >= 2) {
        corner_logs.reserve(1 << 20);
        const double h = 1.0 / grid;
        if (d == 2) {
            for (int i = 0; i < grid; ++i)
                for (int j = 0; j < grid; ++j) {
                    const double x = -0.5 + (i + 0.5) * h;
                    const double y = -0.5 + (j + 0.5) * h;
                    const double r2 = x * x + y * y;
                    if (r2 > 0.25) corner_logs.push_back(0.5 * std::log(r2));
                }
        } else {
            for (int i = 0; i < grid; ++i)
                for (int j = 0; j < grid; ++j)
                    for (int k = 0; k < grid; ++k) {
                        const double x = -0.5 + (i + 0.5) * h;
                        const double y = -0.5 + (j + 0.5) * h;
                        const double z = -0.5 + (k + 0.5) * h;
                        const double r2 = x * x + y * y + z * z;
                        if (r2 > 0.25) corner_logs.push_back(0.5 * std::log(r2));
                    }
        }
    }
    const double cell = (d == 1) ? 0.0 : std::pow(1.0 / grid, d);
    double best = 0.0;
    for (int s = 1; s < 200; ++s) {
        const double eps = d * s / 200.0;
        const double ball = sphere_area(d) * std::pow(0.5, d - eps);
        double corner = 0.0;
        for (double lz : corner_logs) corner += std::exp(-eps * lz);
        const double value = ball + (d - eps) * corner * cell;
        best = std::max(best, value);
    }
    return best;
}

} // namespace

ThresholdReport threshold_report(int d) {
    if (d < 1 || d > 17)
        throw std::invalid_argument("threshold_report: d in {1,...,17}");
    static std::mutex mutex;
    static std::map<int, ThresholdReport> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(d);
        if (it != cache.end()) return it->second;
    }
    const DimensionConstants dc = dimension_constants(d);
    ThresholdReport rep;
    rep.d = d;
    rep.beta_c = dc.beta_c;
    rep.beta_s = dc.beta_s;
    rep.beta_0 = std::numeric_limits<double>::quiet_NaN();
    if (d <= 3) {
        const int table_n = (d == 1) ? 256 : (d == 2 ? 64 : 64);
        const PotentialTables& tables = PotentialTables::shared(d, table_n);
        const double cd = contraction_constant(d);
        const double cdp = tables.remainder_sup();
        rep.contraction_c = cd;
        rep.contraction_c_prime = cdp;
        // root of log(c_d b / (2 pi)^{d/2}) + 2 C_d (d+b)/(d-b)^2
        //        + C_d' (d+b)/(d-b) = 0 on (0, d)
        auto f = [&](double b) {
            return std::log(dc.c_d * b) - 0.5 * d * std::log(2.0 * M_PI) +
                   2.0 * cd * (d + b) / ((d - b) * (d - b)) +
                   cdp * (d + b) / (d - b);
        };
        double lo = 0.0, hi = d * (1.0 - 1e-12);
        if (f(hi) < 0.0) {
            rep.beta_0 = hi;
        } else {
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (f(mid) > 0.0) hi = mid; else lo = mid;
            }
            rep.beta_0 = 0.5 * (lo + hi);
        }
    }
    rep.ordering = (rep.beta_s > rep.beta_c) ? "beta_s > beta_c"
                  : (rep.beta_s < rep.beta_c) ? "beta_s < beta_c"
                                              : "beta_s = beta_c";
    rep.beta0_below_min = !(rep.beta_0 > std::min(rep.beta_c, rep.beta_s));
    std::lock_guard<std::mutex> lock(mutex);
    cache[d] = rep;
    return rep;
}

FourierField GrenierExpansion::field(int n) const {
    FourierField out(d, n);
    auto& v = out.mutable_values();
    std::size_t stride = 1;
    for (int a = 1; a < d; ++a) stride *= static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int j0 = static_cast<int>(i / stride);
        const double x = -0.5 + static_cast<double>(j0) / n;
        v[i] = 1.0 + eps * nu1_amp * std::cos(2.0 * M_PI * x) +
               eps * eps * nu2_amp * 2.0 * std::cos(4.0 * M_PI * x);
    }
    return out;
}

GrenierExpansion grenier_expansion(double beta, double eps, int d, double t) {
    const DimensionConstants dc = dimension_constants(d);
    if (!(beta > dc.beta_s))
        throw std::invalid_argument("grenier_expansion: requires beta > beta_s");
    if (!(eps > 0.0)) throw std::invalid_argument("grenier_expansion: eps must be > 0");
    GrenierExpansion g;
    g.d = d;
    g.beta = beta;
    g.eps = eps;
    g.t = t;
    g.lambda1 = eigenvalue(beta, 1, d);
    g.lambda2 = eigenvalue(beta, 2, d);
    g.validity_t_max = std::log(1.0 / (2.0 * eps)) / g.lambda1;
    if (t > g.validity_t_max)
        throw std::domain_error(
            "grenier_expansion: outside validity window, max admissible t = " +
            std::to_string(g.validity_t_max));
    const double gap = 2.0 * g.lambda1 - g.lambda2;  // > 0 for all d, beta
    const double amp = 2.0 * dc.c_d * std::pow(2.0 * M_PI, 2.0 - d);
    g.nu1_amp = 2.0 * std::exp(g.lambda1 * t);
    g.nu2_amp = amp * (std::exp(2.0 * g.lambda1 * t) - std::exp(g.lambda2 * t)) / gap;
    g.c2_envelope = amp / gap;
    const double cmax = std::max(1.0, g.c2_envelope);
    g.residual_bound = 8.0 * cmax * cmax * eps * eps * eps *
                       std::exp(3.0 * g.lambda1 * t);
    return g;
}

std::optional<double> instability_time_forecast(double beta, double eps, int d,
                                                double c0) {
    const DimensionConstants dc = dimension_constants(d);
    if (!(beta > dc.beta_s))
        throw std::invalid_argument("instability_time_forecast: requires beta > beta_s");
    if (c0 < 0.0)
        throw std::invalid_argument("instability_time_forecast: C0 must be >= 0");
    const double lambda1 = eigenvalue(beta, 1, d);
    const double t_validity = std::log(1.0 / (2.0 * eps)) / lambda1;
    // The mode-doubling term of the expansion is orthogonal at first order to
    // sgn(cos 2 pi k.x) and shifts the L^1 amplitude only at second order; its
    // net effect lives inside the calibrated C0 together with the
    // solver-vs-expansion gap.
    auto f = [&](double t) {
        return (4.0 * eps / M_PI) * std::exp(lambda1 * t) -
               eps * eps * c0 * std::exp(c0 * t) - 0.5;
    };
    const int steps = 4000;
    double prev_t = 0.0, prev_f = f(0.0);
    if (prev_f >= 0.0) return 0.0;
    for (int i = 1; i <= steps; ++i) {
        const double t = t_validity * i / steps;
        const double ft = f(t);
        if (ft >= 0.0) {
            double lo = prev_t, hi = t;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (f(mid) >= 0.0) hi = mid; else lo = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev_t = t;
        prev_f = ft;
    }
    return std::nullopt;
}

double calibrate_instability_c0(double beta, int d,
                                const std::vector<double>& eps_list, int n,
                                double dt, const PotentialTables& tables) {
    // measure actual escape times, then least-squares C0 against them
    std::vector<double> eps_ok, measured;
    for (double eps : eps_list) {
        ModelParams params;
        params.d = d;
        params.beta = beta;
        params.n = n;
        params.dt = dt;
        params.t_max = 4.0 * std::log(1.0 / (2.0 * eps)) / eigenvalue(beta, 1, d);
        FourierField mu0 = grenier_expansion(beta, eps, d, 0.0).field(n);
        Trajectory traj = run(mu0, params, tables,
                              {StoppingRule::Kind::l1_above, 0.5});
        if (traj.stop_reason != "l1_above") continue;
        eps_ok.push_back(eps);
        measured.push_back(traj.final_time);
    }
    if (eps_ok.size() < 2)
        throw std::runtime_error("calibrate_instability_c0: escapes not observed");

    auto sse = [&](double c0) {
        double s = 0.0;
        for (std::size_t i = 0; i < eps_ok.size(); ++i) {
            auto f = instability_time_forecast(beta, eps_ok[i], d, c0);
            if (!f) return 1e300;
            const double diff = *f - measured[i];
            s += diff * diff;
        }
        return s;
    };
    // golden-section search on [0, 4 lambda1]: forecast is increasing in C0
    const double lambda1 = eigenvalue(beta, 1, d);
    double lo = 0.0, hi = 4.0 * lambda1;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = sse(a), fb = sse(b);
    for (int it = 0; it < 80; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = sse(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = sse(b);
        }
    }
    const double c0 = 0.5 * (lo + hi);
    return sse(c0) < sse(0.0) ? c0 : 0.0;
}

MlhlsCertificate mlhls_counterexample(double beta, int d, long N,
                                      const FourierField& mu_min,
                                      const PotentialTables& tables) {
    if (N < 2) throw std::invalid_argument("mlhls_counterexample: N >= 2");
    if (mu_min.dim() != d)
        throw std::invalid_argument("mlhls_counterexample: dimension mismatch");
    const double fe = free_energy(mu_min, beta, tables);
    if (!(fe < 0.0))
        throw std::invalid_argument(
            "mlhls_counterexample: mu_min with nonnegative free energy rejected");
    MlhlsCertificate cert;
    cert.N = N;
    cert.eta_beta = -fe;
    cert.interaction = interaction_energy(mu_min, tables);
    const auto& v = mu_min.values();
    double entropy = 0.0;
    for (double x : v)
        if (x > 1e-14) entropy += x * std::log(x);
    entropy /= static_cast<double>(v.size());
    cert.lhs = entropy / beta;
    cert.rhs = (static_cast<double>(N - 1) / (2.0 * N)) * cert.interaction;
    cert.eta_gap = cert.rhs - cert.lhs;
    cert.n_zero = static_cast<long>(std::ceil(cert.interaction / cert.eta_beta));
    return cert;
}

FourierField optimized_cosine_minimizer(double beta, int d, int n) {
    const DimensionConstants dc = dimension_constants(d);
    if (!(beta > dc.beta_s))
        throw std::invalid_argument("optimized_cosine_minimizer: requires beta > beta_s");
    const double eps = (beta / 12.0) * (1.0 / dc.beta_s - 1.0 / beta);
    FourierField out(d, n);
    auto& v = out.mutable_values();
    std::size_t stride = 1;
    for (int a = 1; a < d; ++a) stride *= static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int j0 = static_cast<int>(i / stride);
        const double x = -0.5 + static_cast<double>(j0) / n;
        v[i] = 1.0 + 2.0 * eps * std::cos(2.0 * M_PI * x);
    }
    return out;
}

} // namespace lgas
