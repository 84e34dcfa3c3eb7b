#pragma once

#include "lgas/constants.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace lgas {

/// Fourier coefficient of the periodic log potential, ghat(k) = c_d (2pi|k|)^{-d}
/// for k != 0 and 0 at k = 0 (zero mean). k2 is the integer |k|^2.
double g_hat(const DimensionConstants& dc, std::int64_t k2);

/// Symbol of e^{t Delta / beta}: exp(-4 pi^2 t |k|^2 / beta).
double heat_multiplier(std::int64_t k2, double t, double beta);

/// Fourier coefficient of the truncation correction
/// chi_eta(x) = log(|x| / max(|x|, eta)), supported in B(0, eta).
/// g_(eta)^hat(k) = ghat(k) + chi_eta_hat(k); note chi_eta_hat(0) < 0.
double chi_eta_hat(int d, std::int64_t k2, double eta);

/// Tabulated evaluator for the periodic log potential g on T^d and its
/// truncation g_(eta), built once per (d, fine grid) and immutable after.
///
/// g is split as g = s + rt where s(x) = -log|x| chi(|x|) carries the
/// singularity analytically (chi a smooth cutoff, = 1 on B(0,1/8), = 0
/// outside B(0,1/4)) and rt = g - s is C^inf on the torus, synthesized
/// spectrally on a fine grid and interpolated multilinearly. Forces are
/// exact gradients of this evaluator: analytic grad s plus the in-cell
/// gradient of the interpolant.
class PotentialTables {
public:
    /// grid_n: per-axis resolution of the solver grid this table serves.
    /// fine_factor 0 picks the default (8x for d=1, 4x for d=2, 2x for d=3,
    /// with per-dimension caps).
    static PotentialTables build(int d, int grid_n, int fine_factor = 0);

    /// Process-wide cache of built tables, keyed by (d, grid_n). Tables are
    /// immutable, so sharing across threads is safe.
    static const PotentialTables& shared(int d, int grid_n);

    int dimension() const { return d_; }
    int fine_n() const { return m_; }
    const DimensionConstants& constants() const { return dc_; }

    double ghat(std::int64_t k2) const { return g_hat(dc_, k2); }

    /// g at a torus point (any representative; min-image applied).
    /// Throws std::domain_error at the origin when eta = 0 semantics apply.
    double eval_g(const double* x) const;
    double eval_g(const std::array<double, 3>& x) const { return eval_g(x.data()); }

    /// g_(eta)(x) = g(x) + log(|x|/max(|x|,eta)); finite everywhere for eta > 0.
    double eval_g_eta(const double* x, double eta) const;

    /// grad g_(eta); eta = 0 gives grad g (throws on zero displacement).
    void eval_force(const double* x, double eta, double* f) const;

    /// Smooth remainder g(x) + log|x| (min-image metric), finite at 0.
    double remainder(const double* x) const;
    /// sup over table nodes of |g + log|x||, used by the uniqueness bound.
    double remainder_sup() const;

    /// The C^inf periodic part rt = g - s on the fine grid (row-major,
    /// node j at x = -1/2 + j/m per axis). Exposed for inspection.
    const std::vector<double>& smooth_table() const { return rt_; }

    /// Direct (non-tabulated) spectral evaluation of rt at one point,
    /// summing all fine-grid modes. Slow; used as an oracle.
    double smooth_part_direct(const double* x) const;

    /// Analytic singular part s and the cutoff chi.
    static double cutoff_chi(double rho);
    static double cutoff_chi_prime(double rho);
    double singular_part(double rho) const;

private:
    PotentialTables() = default;

    double interp_rt(const double* w) const;
    void cell_grad_rt(const double* w, double* grad) const;

    int d_ = 0;
    int m_ = 0;
    DimensionConstants dc_{};
    std::vector<double> rt_;
    std::vector<double> shat_;  // cached s^hat by integer |k|^2
    double rem_sup_ = 0.0;
};

} // namespace lgas
