#pragma once

#include "lgas/functionals.hpp"

namespace lgas {

struct FixedPointResult {
    FourierField state;
    bool converged = false;
    bool diverged = false;
    double residual = 0.0;
    int iterations = 0;
};

/// Damped Kirkwood-Monroe iteration mu <- (1-s) mu + s e^{beta g*mu}/Z.
/// Converged when ||mu - e^{beta g*mu}/Z||_{L^2} <= tol.
FixedPointResult kirkwood_monroe_fixed_point(const FourierField& mu_init,
                                             double beta,
                                             const PotentialTables& tables,
                                             double damping = 0.5,
                                             double tol = 1e-10,
                                             int max_iter = 20000);

struct RateFunctionalResult {
    FourierField state;
    bool converged = false;
    bool returned_to_mu = false;
    double residual = 0.0;
    double distance_to_mu = 0.0;
    int iterations = 0;
};

/// Fixed-point probe of the Euler-Lagrange equation of the rate functional:
/// nu <- mu e^{beta g_(eta)*(nu-mu)} / int mu e^{beta g_(eta)*(nu-mu)}.
/// Starts from `start` (default: mu perturbed by 0.2 cos(2 pi x_1)) and
/// reports whether the iteration returns to nu = mu.
RateFunctionalResult rate_functional_el_iteration(const FourierField& mu,
                                                  double beta, double eta,
                                                  const PotentialTables& tables,
                                                  double tol = 1e-10,
                                                  const FourierField* start = nullptr,
                                                  double damping = 0.5,
                                                  int max_iter = 20000);

/// phi_lambda(x) = lambda^{-d} phi(x/lambda) for a fixed C^inf bump phi
/// supported in B(0,1/8), normalized to grid mass 1. Rejects grids that do
/// not put at least 8 cells across the support.
FourierField bump_family(double lambda, int d, int n);

struct RescaleResult {
    FourierField normalized;  // mass 1
    double beta_tilde;        // beta * mass
};

/// Mass/temperature normalization: run(normalized, beta_tilde) at time t
/// matches the mass-m run at time t/m, scaled by 1/m.
RescaleResult rescale_mass(const FourierField& mu, double beta);

} // namespace lgas
