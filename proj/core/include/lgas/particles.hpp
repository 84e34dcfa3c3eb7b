#pragma once

#include "lgas/functionals.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace lgas {

/// One microscopic configuration X_N on the torus. Positions live in
/// [-1/2, 1/2)^d and are wrapped after every step. Identical
/// (seed, params, step count) reproduces positions bit-for-bit; noise is
/// drawn sequentially in particle-index order from a single stream, so the
/// trajectory does not depend on how force evaluation is partitioned.
struct ParticleEnsemble {
    int d = 2;
    int N = 0;
    double beta = 1.0;  // +infinity switches the noise off
    double eta = 1e-3;
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    std::vector<double> pos;  // N*d row-major
    std::mt19937_64 rng;

    static ParticleEnsemble iid_uniform(int d, int N, double beta, double eta,
                                        std::uint64_t seed);
    static ParticleEnsemble iid_from_density(const FourierField& density, int N,
                                             double beta, double eta,
                                             std::uint64_t seed);
};

/// Euler-Maruyama step:
///   x_i <- x_i + (dt/N) sum_{j != i} grad g_(eta)(x_i - x_j)
///             + sqrt(2 dt / beta) xi_i,  then wrap.
/// threads > 1 parallelizes force accumulation over particles; results are
/// bit-identical for any thread count.
void sde_step(ParticleEnsemble& ens, double dt, const PotentialTables& tables,
              int threads = 1);

/// sum_{i != j} g_(eta)(x_i - x_j)
double pair_energy(const ParticleEnsemble& ens, const PotentialTables& tables);

/// F_N(X_N, mu) = (1/2N^2) sum_{i!=j} g(x_i-x_j) - (1/N) sum_i (g*mu)(x_i)
///              + (1/2) int int g dmu x dmu.
/// Throws on coincident particles (use the truncated variant for those).
double modulated_energy(const ParticleEnsemble& ens, const FourierField& mu,
                        const PotentialTables& tables);

/// Same with g replaced by g_(eta); finite for all configurations.
double modulated_energy_truncated(const ParticleEnsemble& ens,
                                  const FourierField& mu, double eta,
                                  const PotentialTables& tables);

/// H_N(nu^N | mu^N) = H(nu|mu) for product laws.
double product_relative_entropy(const FourierField& nu, const FourierField& mu,
                                int N);

struct McEstimate {
    double estimate = 0.0;   // E_N = (1/beta) H(nu|mu) + mean F_N
    double std_err = 0.0;
    double mc_mean = 0.0;    // Monte Carlo mean of F_N alone
    double mc_std_err = 0.0;
};

/// E_N(nu^N, mu) via i.i.d. sampling of X from nu (alias table over cells
/// plus in-cell jitter). n_mc >= 100.
McEstimate modulated_free_energy_product(const FourierField& nu,
                                         const FourierField& mu, int N,
                                         double beta, int n_mc,
                                         std::uint64_t seed,
                                         const PotentialTables& tables);

/// Closed form of E_{nu^N}[F_N(X_N, mu)] for X i.i.d. ~ nu:
///   ((N-1)/2N) int int g dnu dnu - int int g dnu dmu + (1/2) int int g dmu dmu.
double modulated_energy_expectation(const FourierField& nu,
                                    const FourierField& mu, int N,
                                    const PotentialTables& tables);

/// Cell-average coarse graining at scale M^{-1/d}; mass preserved exactly.
FourierField coarse_grain(const FourierField& f, int M);
/// Empirical-measure version: per-cell particle fraction / cell volume,
/// represented piecewise-constant on an n^d grid (n divisible by M^{1/d}).
FourierField coarse_grain(const ParticleEnsemble& ens, int M, int n);

/// H(C_M(mu_X) | mu) by the cell formula
///   sum_k (count_k/N) (log(M count_k/N) - avg_{Q_k} log mu).
double coarse_grained_relative_entropy(const ParticleEnsemble& ens,
                                       const FourierField& mu, int M);

/// || K_b * (mu_X - mu) ||_{L^2} with K_b the heat kernel at time b;
/// the empirical spectrum is summed exactly over the modes the mollifier
/// keeps above 1e-14.
double chaos_distance(const ParticleEnsemble& ens, const FourierField& mu,
                      double bandwidth);

/// Alias-table sampler over grid cells with uniform jitter inside a cell.
class AliasSampler {
public:
    explicit AliasSampler(const FourierField& density);
    void sample(std::mt19937_64& rng, double* x) const;
    int dim() const { return d_; }

private:
    int d_ = 0, n_ = 0;
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

} // namespace lgas
