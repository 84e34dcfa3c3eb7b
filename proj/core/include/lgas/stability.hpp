#pragma once

#include "lgas/functionals.hpp"

#include <optional>
#include <string>

namespace lgas {

/// lambda_{beta,|k|} = c_d (2 pi |k|)^{2-d} - 4 pi^2 |k|^2 / beta,
/// the eigenvalue of the linearization about the uniform state on the
/// Fourier mode of norm |k|.
double eigenvalue(double beta, int k_norm, int d);

struct ThresholdReport {
    int d = 0;
    double beta_c = 0.0;
    double beta_s = 0.0;
    double beta_0 = 0.0;      // NaN when not computed (d > 3)
    double contraction_c = 0.0;        // C_d of the |x|^{-eps} integral bound
    double contraction_c_prime = 0.0;  // sup |g + log|x||
    std::string ordering;     // "beta_s > beta_c" etc.
    bool beta0_below_min = true;
};

/// beta_c, beta_s exactly; beta_0 solved by bisection from the contraction
/// condition c_d b e^{2 C_d (d+b)/(d-b)^2 + C_d' (d+b)/(d-b)} = (2 pi)^{d/2}
/// with numerically estimated C_d, C_d' (reported for audit). beta_0 is
/// computed for d <= 3 only.
ThresholdReport threshold_report(int d);

/// Second-order approximate solution 1 + eps nu_1 + eps^2 nu_2 built on the
/// unstable mode |k| = 1 along the first axis.
struct GrenierExpansion {
    int d = 0;
    double beta = 0.0;
    double eps = 0.0;
    double t = 0.0;
    double lambda1 = 0.0;     // lambda_{beta,1}
    double lambda2 = 0.0;     // lambda_{beta,2}
    double nu1_amp = 0.0;     // coefficient of cos(2 pi x_1): 2 e^{lambda1 t}
    double nu2_amp = 0.0;     // coefficient of each of e^{+-4 pi i x_1}
    double c2_envelope = 0.0; // C_2 with nu2_amp <= C_2 e^{2 lambda1 t}
    double residual_bound = 0.0;  // 8 (max C_j)^2 eps^3 e^{3 lambda1 t}
    double validity_t_max = 0.0;  // largest t with eps e^{lambda1 t} <= 1/2

    /// Materialize mu_app on an n^d grid.
    FourierField field(int n) const;
};

GrenierExpansion grenier_expansion(double beta, double eps, int d, double t);

/// Smallest t with (4 eps/pi) e^{lambda1 t}
///   - eps^2 (C0 e^{C0 t} + C2L1 e^{2 lambda1 t}) >= 1/2.
/// C2L1 is the computed L^1 envelope of nu_2; C0 bounds the solver/expansion
/// gap and is calibrated per (d, beta) against solver runs. Returns nullopt
/// when no escape occurs inside the validity window.
std::optional<double> instability_time_forecast(double beta, double eps, int d,
                                                double c0);

/// Least-squares calibration of C0 against ||mu^t - mu_app^t||_{L^2} from
/// solver runs at the given amplitudes.
double calibrate_instability_c0(double beta, int d,
                                const std::vector<double>& eps_list, int n,
                                double dt, const PotentialTables& tables);

struct MlhlsCertificate {
    double lhs = 0.0;         // (1/beta) int mu_min log mu_min
    double rhs = 0.0;         // ((N-1)/2N) int int g dmu_min dmu_min
    double eta_gap = 0.0;     // rhs - lhs
    double eta_beta = 0.0;    // -E_beta(mu_min)
    double interaction = 0.0; // int int g dmu_min dmu_min
    long n_zero = 0;          // N_0: gap >= eta_beta/2 for N >= N_0
    long N = 0;
};

/// Certificate that (1/beta) H_N <= E[F_N(X, mu_unif)] - eta for product
/// test laws mu_min^N, both sides in closed form. Requires
/// free_energy(mu_min) < 0.
MlhlsCertificate mlhls_counterexample(double beta, int d, long N,
                                      const FourierField& mu_min,
                                      const PotentialTables& tables);

/// 1 + 2 eps* cos(2 pi x_1) with eps* = (beta/12)(1/beta_s - 1/beta), the
/// amplitude minimizing the quadratic-cubic free-energy bound (beta > beta_s).
FourierField optimized_cosine_minimizer(double beta, int d, int n);

} // namespace lgas
