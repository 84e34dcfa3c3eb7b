#pragma once

#include "lgas/functionals.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgas {

struct ModelParams {
    int d = 2;
    double beta = 2.0;
    int n = 64;
    double dt = 1e-3;
    double t_max = 1.0;
    double eta = 0.0;                // potential truncation (0 for the PDE)
    double interaction_scale = 1.0;  // 0 zeroes the drift (pure diffusion)
    std::vector<std::array<int, 3>> track_modes;  // defaults to e1 and 2 e1
    double diag_dt = 0.0;            // 0 -> t_max / 200
    double snapshot_dt = 0.0;        // 0 -> no intermediate snapshots
};

struct StoppingRule {
    enum class Kind { time_horizon, l1_above, l2_below };
    Kind kind = Kind::time_horizon;
    double threshold = 0.0;
};

struct blowup_error : std::runtime_error {
    explicit blowup_error(double time)
        : std::runtime_error("blow-up detected at t = " + std::to_string(time)),
          t(time) {}
    double t;
};

struct Trajectory {
    ModelParams params;
    std::vector<DiagnosticsRow> diagnostics;
    std::vector<double> snapshot_times;
    std::vector<FourierField> snapshots;
    FourierField final_state;
    double final_time = 0.0;
    std::size_t steps = 0;
    std::string stop_reason;
    std::vector<std::string> warnings;
};

/// One ETDRK2 step of the mild formulation
///   mu^{t+dt} = e^{dt Delta/beta} mu^t
///             - int_0^dt e^{(dt-tau) Delta/beta} div(mu grad g * mu) dtau,
/// pseudo-spectral with 2/3-rule dealiasing; the k = 0 mode is untouched.
/// Throws blowup_error on NaN/overflow in the spectral coefficients.
FourierField step(const FourierField& mu, const ModelParams& params,
                  const PotentialTables& tables);

/// Integrate until t_max, blow-up, or the stopping rule fires. Diagnostics
/// are recorded on the diag_dt cadence (plus the initial and final states).
Trajectory run(const FourierField& mu0, const ModelParams& params,
               const PotentialTables& tables, const StoppingRule& stop = {});

/// Reusable stepper: caches the exponential-integrator tables and scratch
/// buffers for a fixed (d, n, dt, beta).
class EtdStepper {
public:
    EtdStepper(const ModelParams& params, const PotentialTables& tables);

    /// Advance coefficients in place by one step; t is only for error reports.
    void advance(std::vector<std::complex<double>>& coeffs, double t) const;

    /// Field-level variant; keeps the lazy physical/spectral caches coherent,
    /// so interleaving reads of f.values() between steps is safe.
    void advance(FourierField& f, double t) const { advance(f.mutable_coeffs(), t); }

    const ModelParams& params() const { return params_; }

private:
    void nonlinear(const std::vector<std::complex<double>>& coeffs,
                   std::vector<std::complex<double>>& out) const;

    ModelParams params_;
    const PotentialTables* tables_;
    std::vector<double> exp_table_, phi1_, phi2_, ghat_;
    std::vector<unsigned char> dealias_;
    mutable std::vector<std::complex<double>> work_m_, work_v_, work_acc_, stage_, n1_, n2_;
};

} // namespace lgas
