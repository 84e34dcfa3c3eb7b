#pragma once

#include <cstddef>
#include <vector>

namespace lgas {

/// Digamma function psi(x) = Gamma'(x)/Gamma(x) for x > 0.
/// Recurrence into the asymptotic region plus the standard Bernoulli tail;
/// relative accuracy better than 1e-13 on (0, 1e6).
double digamma(double x);

/// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

/// Bessel J0 backed by a cubic-interpolated table on [0, zmax], built on
/// first use. Falls back to std::cyl_bessel_j outside the table.
double bessel_j0_fast(double z);

/// Least-squares fit y ~ a + b x. Returns {a, b}.
struct LinearFit {
    double intercept;
    double slope;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace lgas
