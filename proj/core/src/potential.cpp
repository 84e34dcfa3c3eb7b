#include "lgas/potential.hpp"
#include "lgas/special_functions.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lgas {

double g_hat(const DimensionConstants& dc, std::int64_t k2) {
    if (k2 == 0) return 0.0;
    return dc.c_d * std::pow(4.0 * M_PI * M_PI * static_cast<double>(k2), -0.5 * dc.d);
}

double heat_multiplier(std::int64_t k2, double t, double beta) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat_multiplier: t must be >= 0");
    if (!(beta > 0.0)) throw std::invalid_argument("heat_multiplier: beta must be > 0");
    return std::exp(-4.0 * M_PI * M_PI * t * static_cast<double>(k2) / beta);
}

namespace {

double sinc(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

// integral over B(0, rmax) of profile(r) e^{-2 pi i k.x} dx for a radial
// profile, reduced to a 1d quadrature. kabs = |k|. Panels are graded
// geometrically toward the log singularity at r = 0 and subdivided to
// resolve the oscillation of the kernel.
template <typename Profile>
double radial_hat(int d, double kabs, double rmax, Profile profile) {
    static std::vector<double> gl_nodes, gl_weights;
    static std::once_flag once;
    std::call_once(once, [] { gauss_legendre(12, 0.0, 1.0, gl_nodes, gl_weights); });

    const double omega = 2.0 * M_PI * kabs;
    double total = 0.0;
    double hi = rmax;
    for (int level = 0; level < 48 && hi > 1e-15; ++level) {
        const double lo = 0.5 * hi;
        const int sub = std::max(1, static_cast<int>(std::ceil((hi - lo) * 4.0 * kabs)));
        const double w = (hi - lo) / sub;
        for (int s = 0; s < sub; ++s) {
            const double a = lo + s * w;
            for (std::size_t q = 0; q < gl_nodes.size(); ++q) {
                const double r = a + w * gl_nodes[q];
                const double phi = profile(r);
                double kernel;
                switch (d) {
                    case 1: kernel = 2.0 * std::cos(omega * r); break;
                    case 2: kernel = 2.0 * M_PI * r * bessel_j0_fast(omega * r); break;
                    default: kernel = 4.0 * M_PI * r * r * sinc(omega * r); break;
                }
                total += w * gl_weights[q] * phi * kernel;
            }
        }
        hi = lo;
    }
    return total;
}

} // namespace

double chi_eta_hat(int d, std::int64_t k2, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("chi_eta_hat: eta must be > 0");
    const double kabs = std::sqrt(static_cast<double>(k2));
    const double le = std::log(eta);
    return radial_hat(d, kabs, eta, [le](double r) { return std::log(r) - le; });
}

double PotentialTables::cutoff_chi(double rho) {
    if (rho <= 0.125) return 1.0;
    if (rho >= 0.25) return 0.0;
    const double t = (0.25 - rho) * 8.0;  // 1 at rho=1/8, 0 at rho=1/4
    const double f = std::exp(-1.0 / t);
    const double g = std::exp(-1.0 / (1.0 - t));
    return f / (f + g);
}

double PotentialTables::cutoff_chi_prime(double rho) {
    if (rho <= 0.125 || rho >= 0.25) return 0.0;
    const double t = (0.25 - rho) * 8.0;
    const double f = std::exp(-1.0 / t);
    const double g = std::exp(-1.0 / (1.0 - t));
    const double fp = f / (t * t);
    const double gp = -g / ((1.0 - t) * (1.0 - t));
    const double bp = (fp * (f + g) - f * (fp + gp)) / ((f + g) * (f + g));
    return -8.0 * bp;
}

double PotentialTables::singular_part(double rho) const {
    if (rho >= 0.25) return 0.0;
    return -std::log(rho) * cutoff_chi(rho);
}

PotentialTables PotentialTables::build(int d, int grid_n, int fine_factor) {
    if (d < 1 || d > 3)
        throw std::invalid_argument("PotentialTables: pointwise tables support d in {1,2,3}");
    if (grid_n < 4) throw std::invalid_argument("PotentialTables: grid_n too small");

    PotentialTables t;
    t.d_ = d;
    t.dc_ = dimension_constants(d);

    int factor = fine_factor;
    int cap;
    if (d == 1) { if (factor == 0) factor = 8; cap = 16384; }
    else if (d == 2) { if (factor == 0) factor = 4; cap = 2048; }
    else { if (factor == 0) factor = 2; cap = 128; }
    int m = grid_n * factor;
    if (m > cap) m = cap;
    if (m < grid_n) m = grid_n;
    t.m_ = m;

    // s^hat by integer |k|^2
    const std::int64_t k2max = static_cast<std::int64_t>(d) * (m / 2) * (m / 2) + 1;
    t.shat_.assign(static_cast<std::size_t>(k2max) + 1,
                   std::numeric_limits<double>::quiet_NaN());
    auto shat_of = [&](std::int64_t k2) {
        double& v = t.shat_[static_cast<std::size_t>(k2)];
        if (std::isnan(v)) {
            const double kabs = std::sqrt(static_cast<double>(k2));
            v = radial_hat(d, kabs, 0.25,
                           [](double r) { return -std::log(r) * cutoff_chi(r); });
        }
        return v;
    };

    // synthesize rt = g - s on the fine grid: coefficients ghat - shat,
    // with the parity factor moving the grid origin to x = -1/2.
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(m);
    fftw_complex* buf = fftw_alloc_complex(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::int64_t k2 = 0;
        int parity = 0;
        for (int a = d - 1; a >= 0; --a) {
            const int j = static_cast<int>(rem % m);
            rem /= m;
            const int k = (j < m / 2) ? j : j - m;
            k2 += static_cast<std::int64_t>(k) * k;
            parity += k;
        }
        double coeff = (g_hat(t.dc_, k2) - shat_of(k2));
        if (parity & 1) coeff = -coeff;
        buf[idx][0] = coeff;
        buf[idx][1] = 0.0;
    }
    {
        static std::mutex plan_mutex;
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(plan_mutex);
            int dims[3] = {m, m, m};
            plan = fftw_plan_dft(d, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
    t.rt_.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) t.rt_[idx] = buf[idx][0];
    fftw_free(buf);

    // sup over nodes of |g + log|x|| = |rt + (1 - chi) log rho|
    double sup = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        double rho2 = 0.0;
        for (int a = d - 1; a >= 0; --a) {
            const int j = static_cast<int>(rem % m);
            rem /= m;
            const double x = -0.5 + static_cast<double>(j) / m;
            rho2 += x * x;
        }
        const double rho = std::sqrt(rho2);
        double v = t.rt_[idx];
        const double chi = cutoff_chi(rho);
        if (chi < 1.0 && rho > 0.0) v += (1.0 - chi) * std::log(rho);
        sup = std::max(sup, std::abs(v));
    }
    t.rem_sup_ = sup;
    return t;
}

const PotentialTables& PotentialTables::shared(int d, int grid_n) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, PotentialTables> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(d, grid_n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build(d, grid_n)).first;
    return it->second;
}

namespace {

inline double wrap_half(double x) {
    return x - std::floor(x + 0.5);
}

} // namespace

double PotentialTables::interp_rt(const double* w) const {
    const int m = m_;
    int base[3] = {0, 0, 0};
    double frac[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < d_; ++a) {
        double u = (w[a] + 0.5) * m;
        if (u >= m) u -= m;
        if (u < 0) u += m;
        int i = static_cast<int>(u);
        if (i >= m) i = m - 1;
        base[a] = i;
        frac[a] = u - i;
    }
    if (d_ == 2) {
        const int i0 = base[0], i1 = base[1];
        const int p0 = (i0 + 1 == m) ? 0 : i0 + 1;
        const int p1 = (i1 + 1 == m) ? 0 : i1 + 1;
        const double* row0 = &rt_[static_cast<std::size_t>(i0) * m];
        const double* row1 = &rt_[static_cast<std::size_t>(p0) * m];
        const double t0 = frac[0], t1 = frac[1];
        const double a = row0[i1] + t1 * (row0[p1] - row0[i1]);
        const double b = row1[i1] + t1 * (row1[p1] - row1[i1]);
        return a + t0 * (b - a);
    }
    double value = 0.0;
    const int corners = 1 << d_;
    for (int c = 0; c < corners; ++c) {
        double weight = 1.0;
        std::size_t idx = 0;
        for (int a = 0; a < d_; ++a) {
            const int bit = (c >> a) & 1;
            weight *= bit ? frac[a] : 1.0 - frac[a];
            int node = base[a] + bit;
            if (node >= m) node -= m;
            idx = idx * m + static_cast<std::size_t>(node);
        }
        value += weight * rt_[idx];
    }
    return value;
}

void PotentialTables::cell_grad_rt(const double* w, double* grad) const {
    const int m = m_;
    int base[3] = {0, 0, 0};
    double frac[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < d_; ++a) {
        double u = (w[a] + 0.5) * m;
        if (u >= m) u -= m;
        if (u < 0) u += m;
        int i = static_cast<int>(u);
        if (i >= m) i = m - 1;
        base[a] = i;
        frac[a] = u - i;
    }
    if (d_ == 2) {
        const int i0 = base[0], i1 = base[1];
        const int p0 = (i0 + 1 == m) ? 0 : i0 + 1;
        const int p1 = (i1 + 1 == m) ? 0 : i1 + 1;
        const double f00 = rt_[static_cast<std::size_t>(i0) * m + i1];
        const double f01 = rt_[static_cast<std::size_t>(i0) * m + p1];
        const double f10 = rt_[static_cast<std::size_t>(p0) * m + i1];
        const double f11 = rt_[static_cast<std::size_t>(p0) * m + p1];
        const double t0 = frac[0], t1 = frac[1];
        grad[0] = m * ((f10 - f00) * (1.0 - t1) + (f11 - f01) * t1);
        grad[1] = m * ((f01 - f00) * (1.0 - t0) + (f11 - f10) * t0);
        return;
    }
    for (int a = 0; a < d_; ++a) grad[a] = 0.0;
    const int corners = 1 << d_;
    for (int c = 0; c < corners; ++c) {
        std::size_t idx = 0;
        for (int a = 0; a < d_; ++a) {
            const int bit = (c >> a) & 1;
            int node = base[a] + bit;
            if (node >= m) node -= m;
            idx = idx * m + static_cast<std::size_t>(node);
        }
        const double v = rt_[idx];
        for (int a = 0; a < d_; ++a) {
            double contrib = ((c >> a) & 1) ? 1.0 : -1.0;
            for (int b = 0; b < d_; ++b) {
                if (b == a) continue;
                contrib *= ((c >> b) & 1) ? frac[b] : 1.0 - frac[b];
            }
            grad[a] += contrib * v;
        }
    }
    for (int a = 0; a < d_; ++a) grad[a] *= m;
}

double PotentialTables::eval_g(const double* x) const {
    double w[3];
    double rho2 = 0.0;
    for (int a = 0; a < d_; ++a) {
        w[a] = wrap_half(x[a]);
        rho2 += w[a] * w[a];
    }
    const double rho = std::sqrt(rho2);
    if (rho == 0.0)
        throw std::domain_error("eval_g: singular point (x = 0 with eta = 0)");
    return singular_part(rho) + interp_rt(w);
}

double PotentialTables::remainder(const double* x) const {
    double w[3];
    double rho2 = 0.0;
    for (int a = 0; a < d_; ++a) {
        w[a] = wrap_half(x[a]);
        rho2 += w[a] * w[a];
    }
    const double rho = std::sqrt(rho2);
    double v = interp_rt(w);
    const double chi = cutoff_chi(rho);
    if (chi < 1.0 && rho > 0.0) v += (1.0 - chi) * std::log(rho);
    return v;
}

double PotentialTables::remainder_sup() const { return rem_sup_; }

double PotentialTables::eval_g_eta(const double* x, double eta) const {
    if (eta == 0.0) return eval_g(x);
    if (!(eta > 0.0 && eta < 0.25))
        throw std::invalid_argument("eval_g_eta: require 0 < eta < 1/4");
    double w[3];
    double rho2 = 0.0;
    for (int a = 0; a < d_; ++a) {
        w[a] = wrap_half(x[a]);
        rho2 += w[a] * w[a];
    }
    const double rho = std::sqrt(rho2);
    if (rho >= eta) return singular_part(rho) + interp_rt(w);
    // inside the core g_(eta) = (g + log|x|) - log eta, finite
    double v = interp_rt(w) - std::log(eta);
    const double chi = cutoff_chi(rho);
    if (chi < 1.0 && rho > 0.0) v += (1.0 - chi) * std::log(rho);
    return v;
}

void PotentialTables::eval_force(const double* x, double eta, double* f) const {
    if (eta < 0.0) throw std::invalid_argument("eval_force: eta must be >= 0");
    double w[3];
    double rho2 = 0.0;
    for (int a = 0; a < d_; ++a) {
        w[a] = wrap_half(x[a]);
        rho2 += w[a] * w[a];
    }
    const double rho = std::sqrt(rho2);
    if (rho == 0.0 && eta == 0.0)
        throw std::domain_error("eval_force: collision (zero displacement, eta = 0)");
    cell_grad_rt(w, f);
    if (rho < eta) {
        // flat core: grad g_(eta) = grad(g + log|x|); radial part only where
        // the cutoff is active
        if (rho > 0.125) {
            const double chi = cutoff_chi(rho);
            const double chip = cutoff_chi_prime(rho);
            const double radial = -chip * std::log(rho) + (1.0 - chi) / rho;
            for (int a = 0; a < d_; ++a) f[a] += radial * w[a] / rho;
        }
        return;
    }
    if (rho < 0.25) {
        const double chi = cutoff_chi(rho);
        const double chip = cutoff_chi_prime(rho);
        const double sprime = -chi / rho - std::log(rho) * chip;
        for (int a = 0; a < d_; ++a) f[a] += sprime * w[a] / rho;
    }
}

double PotentialTables::smooth_part_direct(const double* x) const {
    const int m = m_;
    std::size_t total = 1;
    for (int a = 0; a < d_; ++a) total *= static_cast<std::size_t>(m);
    double w[3];
    for (int a = 0; a < d_; ++a) w[a] = wrap_half(x[a]);
    double sum = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::int64_t k2 = 0;
        double phase = 0.0;
        for (int a = d_ - 1; a >= 0; --a) {
            const int j = static_cast<int>(rem % m);
            rem /= m;
            const int k = (j < m / 2) ? j : j - m;
            k2 += static_cast<std::int64_t>(k) * k;
            phase += k * w[a];
        }
        const double coeff = g_hat(dc_, k2) -
            shat_[static_cast<std::size_t>(k2)];
        sum += coeff * std::cos(2.0 * M_PI * phase);
    }
    return sum;
}

} // namespace lgas
