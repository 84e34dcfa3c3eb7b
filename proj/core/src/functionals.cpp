#include "lgas/functionals.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace lgas {

namespace {

constexpr double kEntropyFloor = 1e-14;
constexpr double kNegativeTol = -1e-12;

void check_dims(const FourierField& mu, const PotentialTables& tables) {
    if (mu.dim() != tables.dimension())
        throw std::invalid_argument("field/tables dimension mismatch");
}

double clamped(double v, ClampStats* stats) {
    if (v >= kEntropyFloor) return v;
    if (stats) {
        ++stats->clamped;
        stats->most_negative = std::min(stats->most_negative, v);
    }
    return kEntropyFloor;
}

// g_(eta) multipliers are reused heavily by the fixed-point iterations.
const std::vector<double>& g_eta_multiplier(int d, int n, double eta,
                                            const DimensionConstants& dc) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, double>, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_tuple(d, n, eta);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::size_t total = 1;
        for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
        std::vector<double> mult(total, 0.0);
        std::map<std::int64_t, double> chi_by_k2;
        for_each_mode(d, n, [&](std::size_t idx, const int*, std::int64_t k2) {
            auto cit = chi_by_k2.find(k2);
            if (cit == chi_by_k2.end())
                cit = chi_by_k2.emplace(k2, chi_eta_hat(d, k2, eta)).first;
            mult[idx] = g_hat(dc, k2) + cit->second;
        });
        it = cache.emplace(key, std::move(mult)).first;
    }
    return it->second;
}

} // namespace

FourierField convolve_g(const FourierField& mu, const PotentialTables& tables) {
    check_dims(mu, tables);
    FourierField out = mu;
    auto& c = out.mutable_coeffs();
    for_each_mode(mu.dim(), mu.n(), [&](std::size_t idx, const int*, std::int64_t k2) {
        c[idx] *= tables.ghat(k2);
    });
    return out;
}

FourierField convolve_g_eta(const FourierField& mu, double eta,
                            const PotentialTables& tables) {
    check_dims(mu, tables);
    if (eta == 0.0) return convolve_g(mu, tables);
    const auto& mult = g_eta_multiplier(mu.dim(), mu.n(), eta, tables.constants());
    FourierField out = mu;
    auto& c = out.mutable_coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= mult[i];
    return out;
}

double interaction_energy(const FourierField& mu, const PotentialTables& tables) {
    check_dims(mu, tables);
    const auto& c = mu.coeffs();
    double sum = 0.0;
    for_each_mode(mu.dim(), mu.n(), [&](std::size_t idx, const int*, std::int64_t k2) {
        sum += tables.ghat(k2) * std::norm(c[idx]);
    });
    return sum;
}

double interaction_energy_eta(const FourierField& mu, double eta,
                              const PotentialTables& tables) {
    check_dims(mu, tables);
    if (eta == 0.0) return interaction_energy(mu, tables);
    const auto& mult = g_eta_multiplier(mu.dim(), mu.n(), eta, tables.constants());
    const auto& c = mu.coeffs();
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) sum += mult[i] * std::norm(c[i]);
    return sum;
}

double interaction_cross(const FourierField& nu, const FourierField& mu,
                         const PotentialTables& tables) {
    check_dims(mu, tables);
    const auto& cn = nu.coeffs();
    const auto& cm = mu.coeffs();
    double sum = 0.0;
    for_each_mode(mu.dim(), mu.n(), [&](std::size_t idx, const int*, std::int64_t k2) {
        sum += tables.ghat(k2) * (cn[idx] * std::conj(cm[idx])).real();
    });
    return sum;
}

double free_energy(const FourierField& mu, double beta,
                   const PotentialTables& tables, ClampStats* stats) {
    check_dims(mu, tables);
    if (!(beta > 0.0)) throw std::invalid_argument("free_energy: beta must be > 0");
    const auto& v = mu.values();
    double entropy = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = v[i];
        if (x < kNegativeTol) {
            std::ostringstream oss;
            oss << "free_energy: entropy undefined, density " << x
                << " at grid index " << i;
            throw std::domain_error(oss.str());
        }
        if (x > kEntropyFloor) {
            entropy += x * std::log(x);
        } else if (stats && x < 0.0) {
            ++stats->clamped;
            stats->most_negative = std::min(stats->most_negative, x);
        }
    }
    entropy /= static_cast<double>(v.size());
    return entropy / beta - 0.5 * interaction_energy(mu, tables);
}

FourierField spectral_derivative(const FourierField& mu, int axis) {
    FourierField out = mu;
    auto& c = out.mutable_coeffs();
    for_each_mode(mu.dim(), mu.n(), [&](std::size_t idx, const int* k, std::int64_t) {
        c[idx] *= std::complex<double>(0.0, 2.0 * M_PI * k[axis]);
    });
    return out;
}

double dissipation(const FourierField& mu, double beta,
                   const PotentialTables& tables, ClampStats* stats) {
    check_dims(mu, tables);
    const int d = mu.dim();
    const auto& v = mu.values();
    const FourierField gm = convolve_g(mu, tables);
    double sum = 0.0;
    std::vector<const std::vector<double>*> dmu(d), dgm(d);
    std::vector<FourierField> dmu_f, dgm_f;
    dmu_f.reserve(d);
    dgm_f.reserve(d);
    for (int a = 0; a < d; ++a) {
        dmu_f.push_back(spectral_derivative(mu, a));
        dgm_f.push_back(spectral_derivative(gm, a));
        dmu[a] = &dmu_f[a].values();
        dgm[a] = &dgm_f[a].values();
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = clamped(v[i], stats);
        double term = 0.0;
        for (int a = 0; a < d; ++a) {
            const double w = (*dmu[a])[i] / (beta * m) - (*dgm[a])[i];
            term += w * w;
        }
        sum += term * v[i];
    }
    return sum / static_cast<double>(v.size());
}

double fisher_information(const FourierField& mu, ClampStats* stats) {
    const int d = mu.dim();
    const auto& v = mu.values();
    std::vector<FourierField> grads;
    grads.reserve(d);
    for (int a = 0; a < d; ++a) grads.push_back(spectral_derivative(mu, a));
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = clamped(v[i], stats);
        double g2 = 0.0;
        for (int a = 0; a < d; ++a) {
            const double g = grads[a].values()[i];
            g2 += g * g;
        }
        sum += g2 / m;
    }
    return sum / static_cast<double>(v.size());
}

double relative_entropy(const FourierField& nu, const FourierField& mu,
                        ClampStats* stats) {
    if (nu.dim() != mu.dim() || nu.n() != mu.n())
        throw std::invalid_argument("relative_entropy: field shape mismatch");
    const auto& vn = nu.values();
    const auto& vm = mu.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < vn.size(); ++i) {
        const double a = vn[i];
        const double b = clamped(vm[i], stats);
        if (a > kEntropyFloor)
            sum += a * std::log(a / b);
        else if (stats && a < 0.0) {
            ++stats->clamped;
            stats->most_negative = std::min(stats->most_negative, a);
        }
    }
    return sum / static_cast<double>(vn.size());
}

double l1_distance_uniform(const FourierField& mu) {
    const auto& v = mu.values();
    double sum = 0.0;
    for (double x : v) sum += std::abs(x - 1.0);
    return sum / static_cast<double>(v.size());
}

double l2_distance_uniform(const FourierField& mu) {
    const auto& v = mu.values();
    double sum = 0.0;
    for (double x : v) sum += (x - 1.0) * (x - 1.0);
    return std::sqrt(sum / static_cast<double>(v.size()));
}

double sobolev_norm(const FourierField& mu, double s) {
    const auto& c = mu.coeffs();
    double sum = 0.0;
    for_each_mode(mu.dim(), mu.n(), [&](std::size_t idx, const int*, std::int64_t k2) {
        if (k2 == 0) return;
        sum += std::pow(4.0 * M_PI * M_PI * static_cast<double>(k2), s) * std::norm(c[idx]);
    });
    return std::sqrt(sum);
}

FourierField apply_heat(const FourierField& mu, double t, double beta) {
    FourierField out = mu;
    auto& c = out.mutable_coeffs();
    for_each_mode(mu.dim(), mu.n(), [&](std::size_t idx, const int*, std::int64_t k2) {
        c[idx] *= heat_multiplier(k2, t, beta);
    });
    return out;
}

double multilinear_interp(const FourierField& f, const double* x) {
    const int d = f.dim();
    const int n = f.n();
    const auto& v = f.values();
    int base[3] = {0, 0, 0};
    double frac[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) {
        double u = (x[a] - std::floor(x[a] + 0.5) + 0.5) * n;
        if (u >= n) u -= n;
        if (u < 0) u += n;
        int i = static_cast<int>(u);
        if (i >= n) i = n - 1;
        base[a] = i;
        frac[a] = u - i;
    }
    double value = 0.0;
    const int corners = 1 << d;
    for (int c = 0; c < corners; ++c) {
        double weight = 1.0;
        std::size_t idx = 0;
        for (int a = 0; a < d; ++a) {
            const int bit = (c >> a) & 1;
            weight *= bit ? frac[a] : 1.0 - frac[a];
            int node = base[a] + bit;
            if (node >= n) node -= n;
            idx = idx * n + static_cast<std::size_t>(node);
        }
        value += weight * v[idx];
    }
    return value;
}

DiagnosticsRow diagnostics_row(const FourierField& mu, double t, double beta,
                               const PotentialTables& tables,
                               const std::vector<std::array<int, 3>>& track_modes) {
    DiagnosticsRow row;
    row.t = t;
    row.mass = mu.mean();
    try {
        row.free_energy = free_energy(mu, beta, tables);
    } catch (const std::domain_error&) {
        // states en route to blow-up can develop genuine negatives
        row.free_energy = std::numeric_limits<double>::quiet_NaN();
    }
    row.dissipation = dissipation(mu, beta, tables);
    row.fisher = fisher_information(mu);
    row.l1_dist = l1_distance_uniform(mu);
    row.l2_dist = l2_distance_uniform(mu);
    const auto& c = mu.coeffs();
    const int n = mu.n();
    for (const auto& mode : track_modes) {
        std::size_t idx = 0;
        for (int a = 0; a < mu.dim(); ++a) {
            int j = mode[a];
            if (j < 0) j += n;
            idx = idx * n + static_cast<std::size_t>(j);
        }
        row.mode_amplitudes.push_back(std::abs(c[idx]));
    }
    return row;
}

} // namespace lgas
