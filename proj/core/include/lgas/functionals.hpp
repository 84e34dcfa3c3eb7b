#pragma once

#include "lgas/fourier_field.hpp"
#include "lgas/potential.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace lgas {

/// Tracks how many samples the positivity floor (1e-14) had to absorb when
/// evaluating entropies; spectral solutions undershoot by tiny negatives.
struct ClampStats {
    std::size_t clamped = 0;
    double most_negative = 0.0;
};

/// g * mu via coefficient-wise multiplication by ghat; zero mean.
FourierField convolve_g(const FourierField& mu, const PotentialTables& tables);

/// g_(eta) * mu. Unlike g, g_(eta) does not have zero mean.
FourierField convolve_g_eta(const FourierField& mu, double eta,
                            const PotentialTables& tables);

/// int int g(x-y) dmu(x) dmu(y) = sum_k ghat(k) |mu^hat(k)|^2.
double interaction_energy(const FourierField& mu, const PotentialTables& tables);
double interaction_energy_eta(const FourierField& mu, double eta,
                              const PotentialTables& tables);
/// Cross term int int g(x-y) dnu(x) dmu(y).
double interaction_cross(const FourierField& nu, const FourierField& mu,
                         const PotentialTables& tables);

/// E_beta(mu) = (1/beta) int mu log mu - (1/2) int int g dmu x dmu.
/// Throws std::domain_error (with sample location) on values < -1e-12.
double free_energy(const FourierField& mu, double beta,
                   const PotentialTables& tables, ClampStats* stats = nullptr);

/// D_beta(mu) = int |(1/beta) grad log mu - grad g*mu|^2 dmu >= 0.
double dissipation(const FourierField& mu, double beta,
                   const PotentialTables& tables, ClampStats* stats = nullptr);

/// I(mu) = int |grad mu|^2 / mu >= 0.
double fisher_information(const FourierField& mu, ClampStats* stats = nullptr);

/// H(nu|mu) = int nu log(nu/mu) >= 0 (within quadrature error).
double relative_entropy(const FourierField& nu, const FourierField& mu,
                        ClampStats* stats = nullptr);

double l1_distance_uniform(const FourierField& mu);
double l2_distance_uniform(const FourierField& mu);
/// Homogeneous Sobolev norm (sum_{k!=0} (2pi|k|)^{2s} |mu^hat|^2)^{1/2}.
double sobolev_norm(const FourierField& mu, double s);

/// Spectral partial derivative along axis a.
FourierField spectral_derivative(const FourierField& mu, int axis);

/// e^{t Delta / beta} mu.
FourierField apply_heat(const FourierField& mu, double t, double beta);

/// Multilinear interpolation of grid samples at a torus point.
double multilinear_interp(const FourierField& f, const double* x);

/// One time sample of the tracked functionals.
struct DiagnosticsRow {
    double t = 0.0;
    double mass = 0.0;
    double free_energy = 0.0;
    double dissipation = 0.0;
    double fisher = 0.0;
    double l1_dist = 0.0;
    double l2_dist = 0.0;
    std::vector<double> mode_amplitudes;
};

DiagnosticsRow diagnostics_row(const FourierField& mu, double t, double beta,
                               const PotentialTables& tables,
                               const std::vector<std::array<int, 3>>& track_modes);

} // namespace lgas
