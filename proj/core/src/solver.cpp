#include "lgas/solver.hpp"

#include <algorithm>
#include <cmath>

namespace lgas {

namespace {

double phi1(double z) {
    if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    return std::expm1(z) / z;
}

double phi2(double z) {
    if (std::abs(z) < 1e-4) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
    return (std::expm1(z) - z) / (z * z);
}

constexpr double kBlowupThreshold = 1e12;

} // namespace

EtdStepper::EtdStepper(const ModelParams& params, const PotentialTables& tables)
    : params_(params), tables_(&tables) {
    if (params_.d != tables.dimension())
        throw std::invalid_argument("EtdStepper: params/tables dimension mismatch");
    if (!(params_.dt > 0.0)) throw std::invalid_argument("EtdStepper: dt must be > 0");
    if (!(params_.beta > 0.0)) throw std::invalid_argument("EtdStepper: beta must be > 0");
    const int d = params_.d;
    const int n = params_.n;
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
    exp_table_.resize(total);
    phi1_.resize(total);
    phi2_.resize(total);
    ghat_.resize(total);
    dealias_.resize(total);
    const int kmax = n / 3;
    for_each_mode(d, n, [&](std::size_t idx, const int* k, std::int64_t k2) {
        const double z = -4.0 * M_PI * M_PI * static_cast<double>(k2) / params_.beta * params_.dt;
        exp_table_[idx] = std::exp(z);
        phi1_[idx] = phi1(z);
        phi2_[idx] = phi2(z);
        ghat_[idx] = params_.interaction_scale * g_hat(tables.constants(), k2);
        bool keep = true;
        for (int a = 0; a < d; ++a)
            if (std::abs(k[a]) > kmax) keep = false;
        dealias_[idx] = keep ? 1 : 0;
    });
    work_m_.resize(total);
    work_v_.resize(total);
    work_acc_.resize(total);
    stage_.resize(total);
    n1_.resize(total);
    n2_.resize(total);
}

void EtdStepper::nonlinear(const std::vector<std::complex<double>>& coeffs,
                           std::vector<std::complex<double>>& out) const {
    const int d = params_.d;
    const int n = params_.n;
    const std::size_t total = coeffs.size();
    if (params_.interaction_scale == 0.0) {
        std::fill(out.begin(), out.end(), std::complex<double>(0.0, 0.0));
        return;
    }
    // dealiased density on the grid
    for (std::size_t i = 0; i < total; ++i)
        work_m_[i] = dealias_[i] ? coeffs[i] : 0.0;
    detail::spectral_backward(d, n, work_m_.data());

    std::fill(out.begin(), out.end(), std::complex<double>(0.0, 0.0));
    for (int a = 0; a < d; ++a) {
        // v_a = d_a (g * mu), dealiased
        for_each_mode(d, n, [&](std::size_t idx, const int* k, std::int64_t) {
            if (!dealias_[idx]) {
                work_v_[idx] = 0.0;
                return;
            }
            work_v_[idx] = coeffs[idx] * ghat_[idx] *
                           std::complex<double>(0.0, 2.0 * M_PI * k[a]);
        });
        detail::spectral_backward(d, n, work_v_.data());
        for (std::size_t i = 0; i < total; ++i)
            work_acc_[i] = work_m_[i].real() * work_v_[i].real();
        detail::spectral_forward(d, n, work_acc_.data());
        // N^hat -= 2 pi i k_a (mu v_a)^hat
        for_each_mode(d, n, [&](std::size_t idx, const int* k, std::int64_t) {
            if (!dealias_[idx]) return;
            out[idx] -= std::complex<double>(0.0, 2.0 * M_PI * k[a]) * work_acc_[idx];
        });
    }
    out[0] = 0.0;  // divergence form: exact mass conservation
}

void EtdStepper::advance(std::vector<std::complex<double>>& coeffs, double t) const {
    const std::size_t total = coeffs.size();
    nonlinear(coeffs, n1_);
    for (std::size_t i = 0; i < total; ++i)
        stage_[i] = exp_table_[i] * coeffs[i] + params_.dt * phi1_[i] * n1_[i];
    nonlinear(stage_, n2_);
    for (std::size_t i = 0; i < total; ++i)
        coeffs[i] = stage_[i] + params_.dt * phi2_[i] * (n2_[i] - n1_[i]);
    for (std::size_t i = 0; i < total; ++i) {
        const double re = coeffs[i].real();
        const double im = coeffs[i].imag();
        if (!std::isfinite(re) || !std::isfinite(im) ||
            std::abs(re) > kBlowupThreshold || std::abs(im) > kBlowupThreshold)
            throw blowup_error(t + params_.dt);
    }
}

FourierField step(const FourierField& mu, const ModelParams& params,
                  const PotentialTables& tables) {
    EtdStepper stepper(params, tables);
    FourierField out = mu;
    stepper.advance(out.mutable_coeffs(), 0.0);
    return out;
}

Trajectory run(const FourierField& mu0, const ModelParams& params_in,
               const PotentialTables& tables, const StoppingRule& stop) {
    ModelParams params = params_in;
    if (params.track_modes.empty()) {
        params.track_modes.push_back({1, 0, 0});
        params.track_modes.push_back({2, 0, 0});
    }
    if (params.diag_dt <= 0.0) params.diag_dt = params.t_max / 200.0;

    Trajectory traj;
    traj.params = params;

    // CFL-style advisory on the initial drift
    {
        FourierField gm = convolve_g(mu0, tables);
        double vmax = 0.0;
        for (int a = 0; a < params.d; ++a) {
            FourierField da = spectral_derivative(gm, a);
            for (double v : da.values()) vmax = std::max(vmax, std::abs(v));
        }
        if (params.dt * vmax * params.n > 1.0)
            traj.warnings.push_back("advisory: dt * max|grad g*mu0| * n > 1");
    }

    EtdStepper stepper(params, tables);
    FourierField state = mu0;
    double t = 0.0;
    std::size_t steps = 0;

    auto record = [&](double time) {
        if (!traj.diagnostics.empty() &&
            std::abs(traj.diagnostics.back().t - time) < 0.5 * params.dt)
            return;
        traj.diagnostics.push_back(
            diagnostics_row(state, time, params.beta, tables, params.track_modes));
    };
    auto snapshot = [&](double time) {
        traj.snapshot_times.push_back(time);
        traj.snapshots.push_back(state);
    };

    record(0.0);
    if (params.snapshot_dt > 0.0) snapshot(0.0);
    double next_diag = params.diag_dt;
    double next_snap = params.snapshot_dt;

    std::string reason = "t_max";
    const double t_end = params.t_max * (1.0 - 1e-12);
    try {
        while (t < t_end) {
            stepper.advance(state.mutable_coeffs(), t);
            t = params.dt * static_cast<double>(++steps);

            bool fired = false;
            if (stop.kind == StoppingRule::Kind::l1_above) {
                if (l1_distance_uniform(state) >= stop.threshold) {
                    reason = "l1_above";
                    fired = true;
                }
            } else if (stop.kind == StoppingRule::Kind::l2_below) {
                if (l2_distance_uniform(state) <= stop.threshold) {
                    reason = "l2_below";
                    fired = true;
                }
            }
            if (t >= next_diag - 1e-12 * params.t_max && t < t_end && !fired) {
                record(t);
                next_diag += params.diag_dt;
            }
            if (params.snapshot_dt > 0.0 && t >= next_snap - 1e-12 * params.t_max &&
                t < t_end && !fired) {
                snapshot(t);
                next_snap += params.snapshot_dt;
            }
            if (fired) break;
        }
    } catch (const blowup_error& e) {
        // terminal outcome, not a failure of the runner: callers get the
        // partial trajectory and the blow-up time stamp
        traj.final_state = std::move(state);
        traj.final_time = e.t;
        traj.steps = steps;
        traj.stop_reason = "blow_up";
        return traj;
    }

    record(t);
    if (params.snapshot_dt > 0.0) snapshot(t);
    traj.final_state = std::move(state);
    traj.final_time = t;
    traj.steps = steps;
    traj.stop_reason = reason;
    return traj;
}

} // namespace lgas
