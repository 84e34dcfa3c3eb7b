#include "lgas/steady_state.hpp"

#include <cmath>
#include <stdexcept>

namespace lgas {

namespace {

double l2_diff(const FourierField& a, const FourierField& b) {
    const auto& va = a.values();
    const auto& vb = b.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        const double d = va[i] - vb[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(va.size()));
}

// e^{w} / mean(e^{w}) on the grid
FourierField gibbs_of(const FourierField& w) {
    FourierField out(w.dim(), w.n());
    auto& vo = out.mutable_values();
    const auto& vw = w.values();
    double zsum = 0.0;
    for (std::size_t i = 0; i < vw.size(); ++i) {
        vo[i] = std::exp(vw[i]);
        zsum += vo[i];
    }
    zsum /= static_cast<double>(vw.size());
    if (!std::isfinite(zsum) || zsum <= 0.0)
        throw std::overflow_error("gibbs map overflowed");
    for (double& v : vo) v /= zsum;
    return out;
}

} // namespace

FixedPointResult kirkwood_monroe_fixed_point(const FourierField& mu_init,
                                             double beta,
                                             const PotentialTables& tables,
                                             double damping, double tol,
                                             int max_iter) {
    if (!(damping > 0.0 && damping <= 1.0))
        throw std::invalid_argument("kirkwood_monroe: damping must be in (0,1]");
    FixedPointResult res;
    FourierField mu = mu_init;
    for (int it = 0; it < max_iter; ++it) {
        FourierField w = convolve_g(mu, tables);
        for (double& v : w.mutable_values()) v *= beta;
        FourierField target;
        try {
            target = gibbs_of(w);
        } catch (const std::overflow_error&) {
            res.state = std::move(mu);
            res.diverged = true;
            res.iterations = it;
            return res;
        }
        const double r = l2_diff(mu, target);
        if (r <= tol) {
            res.state = std::move(target);
            res.converged = true;
            res.residual = r;
            res.iterations = it + 1;
            return res;
        }
        auto& vm = mu.mutable_values();
        const auto& vt = target.values();
        for (std::size_t i = 0; i < vm.size(); ++i)
            vm[i] = (1.0 - damping) * vm[i] + damping * vt[i];
        res.residual = r;
    }
    res.state = std::move(mu);
    res.iterations = max_iter;
    return res;
}

RateFunctionalResult rate_functional_el_iteration(const FourierField& mu,
                                                  double beta, double eta,
                                                  const PotentialTables& tables,
                                                  double tol,
                                                  const FourierField* start,
                                                  double damping, int max_iter) {
    if (eta < 0.0) throw std::invalid_argument("rate_functional: eta must be >= 0");
    RateFunctionalResult res;
    FourierField nu;
    if (start) {
        nu = *start;
    } else {
        nu = mu;
        auto& v = nu.mutable_values();
        const int n = nu.n();
        std::size_t stride = 1;
        for (int a = 1; a < nu.dim(); ++a) stride *= static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const int j0 = static_cast<int>(i / stride);
            v[i] += 0.2 * std::cos(2.0 * M_PI * (-0.5 + static_cast<double>(j0) / n));
        }
    }
    FourierField diff(mu.dim(), mu.n());
    for (int it = 0; it < max_iter; ++it) {
        {
            auto& vd = diff.mutable_values();
            const auto& vn = nu.values();
            const auto& vm = mu.values();
            for (std::size_t i = 0; i < vd.size(); ++i) vd[i] = vn[i] - vm[i];
        }
        FourierField w = convolve_g_eta(diff, eta, tables);
        FourierField target(mu.dim(), mu.n());
        {
            auto& vt = target.mutable_values();
            const auto& vw = w.values();
            const auto& vm = mu.values();
            double z = 0.0;
            for (std::size_t i = 0; i < vt.size(); ++i) {
                vt[i] = vm[i] * std::exp(beta * vw[i]);
                z += vt[i];
            }
            z /= static_cast<double>(vt.size());
            if (!std::isfinite(z) || z <= 0.0) {
                res.state = std::move(nu);
                res.iterations = it;
                return res;
            }
            for (double& v : vt) v /= z;
        }
        const double r = l2_diff(nu, target);
        if (r <= tol) {
            res.state = std::move(target);
            res.converged = true;
            res.residual = r;
            res.iterations = it + 1;
            res.distance_to_mu = l2_diff(res.state, mu);
            res.returned_to_mu = res.distance_to_mu <= 1e4 * tol;
            return res;
        }
        auto& vn = nu.mutable_values();
        const auto& vt = target.values();
        for (std::size_t i = 0; i < vn.size(); ++i)
            vn[i] = (1.0 - damping) * vn[i] + damping * vt[i];
        res.residual = r;
    }
    res.state = std::move(nu);
    res.iterations = max_iter;
    res.distance_to_mu = l2_diff(res.state, mu);
    return res;
}

FourierField bump_family(double lambda, int d, int n) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("bump_family: lambda must be in (0,1)");
    // support radius lambda/8; require >= 8 cells across the diameter
    const int required = static_cast<int>(std::ceil(32.0 / lambda));
    if (n * lambda / 4.0 < 8.0) {
        throw std::invalid_argument(
            "bump_family: under-resolved bump, need n >= " + std::to_string(required));
    }
    FourierField out(d, n);
    auto& v = out.mutable_values();
    const double radius = lambda / 8.0;
    std::size_t total = v.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        double rho2 = 0.0;
        for (int a = d - 1; a >= 0; --a) {
            const int j = static_cast<int>(rem % n);
            rem /= n;
            const double x = -0.5 + static_cast<double>(j) / n;
            rho2 += x * x;
        }
        const double u = rho2 / (radius * radius);
        v[idx] = (u < 1.0) ? std::exp(-1.0 / (1.0 - u)) : 0.0;
    }
    double mass = 0.0;
    for (double x : v) mass += x;
    mass /= static_cast<double>(total);
    if (mass <= 0.0) throw std::runtime_error("bump_family: empty bump");
    for (double& x : v) x /= mass;
    return out;
}

RescaleResult rescale_mass(const FourierField& mu, double beta) {
    const double m = mu.mean();
    if (!(m > 0.0)) throw std::invalid_argument("rescale_mass: nonpositive mass");
    RescaleResult res;
    res.normalized = mu;
    auto& v = res.normalized.mutable_values();
    for (double& x : v) x /= m;
    res.beta_tilde = beta * m;
    return res;
}

} // namespace lgas
