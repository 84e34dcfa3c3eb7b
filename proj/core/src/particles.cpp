#include "lgas/particles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <atomic>
#include <thread>

namespace lgas {

namespace {

inline double wrap_half(double x) { return x - std::floor(x + 0.5); }

void wrap_all(ParticleEnsemble& ens) {
    for (double& x : ens.pos) x = wrap_half(x);
}

int cells_per_axis(int M, int d) {
    const int m = static_cast<int>(std::llround(std::pow(static_cast<double>(M), 1.0 / d)));
    std::int64_t check = 1;
    for (int a = 0; a < d; ++a) check *= m;
    if (check != M)
        throw std::invalid_argument("coarse_grain: M must be a perfect d-th power");
    return m;
}

} // namespace

ParticleEnsemble ParticleEnsemble::iid_uniform(int d, int N, double beta,
                                               double eta, std::uint64_t seed) {
    if (d < 1 || d > 3) throw std::invalid_argument("ParticleEnsemble: d in {1,2,3}");
    if (N < 1) throw std::invalid_argument("ParticleEnsemble: N >= 1");
    ParticleEnsemble ens;
    ens.d = d;
    ens.N = N;
    ens.beta = beta;
    ens.eta = eta;
    ens.seed = seed;
    ens.rng.seed(seed);
    ens.pos.resize(static_cast<std::size_t>(N) * d);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (double& x : ens.pos) x = u(ens.rng);
    return ens;
}

ParticleEnsemble ParticleEnsemble::iid_from_density(const FourierField& density,
                                                    int N, double beta, double eta,
                                                    std::uint64_t seed) {
    ParticleEnsemble ens = iid_uniform(density.dim(), N, beta, eta, seed);
    AliasSampler sampler(density);
    for (int i = 0; i < N; ++i) sampler.sample(ens.rng, &ens.pos[i * ens.d]);
    return ens;
}

void sde_step(ParticleEnsemble& ens, double dt, const PotentialTables& tables,
              int threads) {
    if (!(dt > 0.0)) throw std::invalid_argument("sde_step: dt must be > 0");
    if (!(ens.eta > 0.0))
        throw std::invalid_argument("sde_step: eta must be > 0 (collisions occur)");
    const int d = ens.d;
    const int N = ens.N;
    const double inv_n = 1.0 / static_cast<double>(N);

    // Pair forces accumulated per row block; blocks and their merge order
    // depend only on N, so the result is bit-identical for any thread count.
    const int block_rows = 128;
    const int nb = (N + block_rows - 1) / block_rows;
    const std::size_t stride = static_cast<std::size_t>(N) * d;
    std::vector<double> partial(static_cast<std::size_t>(nb) * stride, 0.0);
    auto do_block = [&](int b) {
        double* P = &partial[static_cast<std::size_t>(b) * stride];
        const int lo = b * block_rows;
        const int hi = std::min(N, lo + block_rows);
        double diff[3], f[3];
        for (int i = lo; i < hi; ++i) {
            const double* xi = &ens.pos[static_cast<std::size_t>(i) * d];
            double* Pi = &P[static_cast<std::size_t>(i) * d];
            for (int j = i + 1; j < N; ++j) {
                const double* xj = &ens.pos[static_cast<std::size_t>(j) * d];
                for (int a = 0; a < d; ++a) diff[a] = xi[a] - xj[a];
                tables.eval_force(diff, ens.eta, f);
                double* Pj = &P[static_cast<std::size_t>(j) * d];
                for (int a = 0; a < d; ++a) {
                    Pi[a] += f[a];
                    Pj[a] -= f[a];
                }
            }
        }
    };
    if (threads <= 1 || nb == 1) {
        for (int b = 0; b < nb; ++b) do_block(b);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        const int nt = std::min(threads, nb);
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (int b = next.fetch_add(1); b < nb; b = next.fetch_add(1))
                    do_block(b);
            });
        for (auto& th : pool) th.join();
    }
    std::vector<double> force(stride, 0.0);
    for (int b = 0; b < nb; ++b) {
        const double* P = &partial[static_cast<std::size_t>(b) * stride];
        for (std::size_t i = 0; i < stride; ++i) force[i] += P[i];
    }

    for (std::size_t i = 0; i < ens.pos.size(); ++i)
        ens.pos[i] += dt * inv_n * force[i];

    // noise sequential in particle-index order, one stream per ensemble
    if (std::isfinite(ens.beta)) {
        const double sigma = std::sqrt(2.0 * dt / ens.beta);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (std::size_t i = 0; i < ens.pos.size(); ++i)
            ens.pos[i] += sigma * normal(ens.rng);
    }
    wrap_all(ens);
    for (double x : ens.pos)
        if (!std::isfinite(x)) throw std::runtime_error("sde_step: non-finite position");
    ++ens.steps;
}

double pair_energy(const ParticleEnsemble& ens, const PotentialTables& tables) {
    const int d = ens.d;
    double diff[3];
    double sum = 0.0;
    for (int i = 0; i < ens.N; ++i)
        for (int j = 0; j < ens.N; ++j) {
            if (i == j) continue;
            for (int a = 0; a < d; ++a)
                diff[a] = ens.pos[static_cast<std::size_t>(i) * d + a] -
                          ens.pos[static_cast<std::size_t>(j) * d + a];
            sum += tables.eval_g_eta(diff, ens.eta);
        }
    return sum;
}

namespace {

double modulated_energy_impl(const ParticleEnsemble& ens, const FourierField& mu,
                             double eta, const PotentialTables& tables) {
    const int d = ens.d;
    const int N = ens.N;
    double diff[3];
    double pair = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            for (int a = 0; a < d; ++a)
                diff[a] = ens.pos[static_cast<std::size_t>(i) * d + a] -
                          ens.pos[static_cast<std::size_t>(j) * d + a];
            pair += (eta > 0.0) ? tables.eval_g_eta(diff, eta) : tables.eval_g(diff);
        }
    pair /= static_cast<double>(N) * N;  // (1/2N^2) * 2 * sum_{i<j}

    const FourierField gmu = (eta > 0.0) ? convolve_g_eta(mu, eta, tables)
                                         : convolve_g(mu, tables);
    double cross = 0.0;
    for (int i = 0; i < N; ++i)
        cross += multilinear_interp(gmu, &ens.pos[static_cast<std::size_t>(i) * d]);
    cross /= static_cast<double>(N);

    const double self = (eta > 0.0) ? interaction_energy_eta(mu, eta, tables)
                                    : interaction_energy(mu, tables);
    return pair - cross + 0.5 * self;
}

} // namespace

double modulated_energy(const ParticleEnsemble& ens, const FourierField& mu,
                        const PotentialTables& tables) {
    if (!mu.is_probability_density())
        throw std::invalid_argument("modulated_energy: mu must be a probability density");
    return modulated_energy_impl(ens, mu, 0.0, tables);
}

double modulated_energy_truncated(const ParticleEnsemble& ens,
                                  const FourierField& mu, double eta,
                                  const PotentialTables& tables) {
    if (!(eta > 0.0))
        throw std::invalid_argument("modulated_energy_truncated: eta must be > 0");
    return modulated_energy_impl(ens, mu, eta, tables);
}

double product_relative_entropy(const FourierField& nu, const FourierField& mu,
                                int N) {
    if (N < 1) throw std::invalid_argument("product_relative_entropy: N >= 1");
    return relative_entropy(nu, mu);
}

double modulated_energy_expectation(const FourierField& nu,
                                    const FourierField& mu, int N,
                                    const PotentialTables& tables) {
    const double inn = interaction_energy(nu, tables);
    const double imm = interaction_energy(mu, tables);
    const double inm = interaction_cross(nu, mu, tables);
    const double w = static_cast<double>(N - 1) / (2.0 * N);
    return w * inn - inm + 0.5 * imm;
}

McEstimate modulated_free_energy_product(const FourierField& nu,
                                         const FourierField& mu, int N,
                                         double beta, int n_mc,
                                         std::uint64_t seed,
                                         const PotentialTables& tables) {
    if (n_mc < 100)
        throw std::invalid_argument("modulated_free_energy_product: n_mc >= 100");
    AliasSampler sampler(nu);
    ParticleEnsemble ens;
    ens.d = nu.dim();
    ens.N = N;
    ens.beta = beta;
    ens.eta = 0.0;
    ens.seed = seed;
    ens.rng.seed(seed);
    ens.pos.resize(static_cast<std::size_t>(N) * ens.d);

    // hoist the mu-dependent pieces out of the sampling loop
    const FourierField gmu = convolve_g(mu, tables);
    const double half_self = 0.5 * interaction_energy(mu, tables);
    const int d = ens.d;
    double diff[3];
    double sum = 0.0, sum2 = 0.0;
    for (int rep = 0; rep < n_mc; ++rep) {
        for (int i = 0; i < N; ++i) sampler.sample(ens.rng, &ens.pos[i * ens.d]);
        double pair = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                for (int a = 0; a < d; ++a)
                    diff[a] = ens.pos[static_cast<std::size_t>(i) * d + a] -
                              ens.pos[static_cast<std::size_t>(j) * d + a];
                pair += tables.eval_g(diff);
            }
        pair /= static_cast<double>(N) * N;
        double cross = 0.0;
        for (int i = 0; i < N; ++i)
            cross += multilinear_interp(gmu, &ens.pos[static_cast<std::size_t>(i) * d]);
        cross /= static_cast<double>(N);
        const double f = pair - cross + half_self;
        sum += f;
        sum2 += f * f;
    }
    const double mean = sum / n_mc;
    const double var = std::max(0.0, sum2 / n_mc - mean * mean);
    McEstimate est;
    est.mc_mean = mean;
    est.mc_std_err = std::sqrt(var / n_mc);
    est.estimate = relative_entropy(nu, mu) / beta + mean;
    est.std_err = est.mc_std_err;
    return est;
}

FourierField coarse_grain(const FourierField& f, int M) {
    const int d = f.dim();
    const int n = f.n();
    const int m = cells_per_axis(M, d);
    if (n % m != 0)
        throw std::invalid_argument("coarse_grain: grid not divisible by cell count");
    const int q = n / m;
    FourierField out(d, n);
    auto& vo = out.mutable_values();
    const auto& vi = f.values();
    std::vector<double> cell_sum(static_cast<std::size_t>(M), 0.0);
    auto cell_of = [&](std::size_t idx) {
        std::size_t rem = idx;
        std::size_t cell = 0;
        for (int a = d - 1; a >= 0; --a) {
            const int j = static_cast<int>(rem % n);
            rem /= n;
            // axis a is the (d-1-a)-th fastest; build cell index in the same
            // row-major order as the grid
            const int c = j / q;
            std::size_t place = 1;
            for (int b = d - 1; b > a; --b) place *= static_cast<std::size_t>(m);
            cell += place * static_cast<std::size_t>(c);
        }
        return cell;
    };
    for (std::size_t idx = 0; idx < vi.size(); ++idx) cell_sum[cell_of(idx)] += vi[idx];
    const double cell_pts = std::pow(static_cast<double>(q), d);
    for (std::size_t idx = 0; idx < vi.size(); ++idx)
        vo[idx] = cell_sum[cell_of(idx)] / cell_pts;
    return out;
}

namespace {

std::vector<std::int64_t> particle_cell_counts(const ParticleEnsemble& ens, int m) {
    std::size_t n_cells = 1;
    for (int a = 0; a < ens.d; ++a) n_cells *= static_cast<std::size_t>(m);
    std::vector<std::int64_t> counts(n_cells, 0);
    for (int i = 0; i < ens.N; ++i) {
        std::size_t cell = 0;
        for (int a = 0; a < ens.d; ++a) {
            const double x = wrap_half(ens.pos[static_cast<std::size_t>(i) * ens.d + a]);
            int c = static_cast<int>((x + 0.5) * m);
            if (c >= m) c = m - 1;
            if (c < 0) c = 0;
            cell = cell * m + static_cast<std::size_t>(c);
        }
        ++counts[cell];
    }
    return counts;
}

} // namespace

FourierField coarse_grain(const ParticleEnsemble& ens, int M, int n) {
    const int d = ens.d;
    const int m = cells_per_axis(M, d);
    if (n % m != 0)
        throw std::invalid_argument("coarse_grain: grid not divisible by cell count");
    auto counts = particle_cell_counts(ens, m);
    FourierField out(d, n);
    auto& vo = out.mutable_values();
    const int q = n / m;
    for (std::size_t idx = 0; idx < vo.size(); ++idx) {
        std::size_t rem = idx;
        std::size_t cell = 0;
        for (int a = d - 1; a >= 0; --a) {
            const int j = static_cast<int>(rem % n);
            rem /= n;
            const int c = j / q;
            std::size_t place = 1;
            for (int b = d - 1; b > a; --b) place *= static_cast<std::size_t>(m);
            cell += place * static_cast<std::size_t>(c);
        }
        vo[idx] = static_cast<double>(counts[cell]) / ens.N * M;
    }
    return out;
}

double coarse_grained_relative_entropy(const ParticleEnsemble& ens,
                                       const FourierField& mu, int M) {
    const int d = ens.d;
    const int n = mu.n();
    const int m = cells_per_axis(M, d);
    if (n % m != 0)
        throw std::invalid_argument("coarse_grained_relative_entropy: grid/cells mismatch");
    auto counts = particle_cell_counts(ens, m);

    // per-cell averages of log mu on the grid
    const auto& vm = mu.values();
    std::vector<double> cell_logmu(counts.size(), 0.0);
    const int q = n / m;
    for (std::size_t idx = 0; idx < vm.size(); ++idx) {
        std::size_t rem = idx;
        std::size_t cell = 0;
        for (int a = d - 1; a >= 0; --a) {
            const int j = static_cast<int>(rem % n);
            rem /= n;
            const int c = j / q;
            std::size_t place = 1;
            for (int b = d - 1; b > a; --b) place *= static_cast<std::size_t>(m);
            cell += place * static_cast<std::size_t>(c);
        }
        if (vm[idx] <= 0.0)
            throw std::domain_error("coarse_grained_relative_entropy: nonpositive mu");
        cell_logmu[cell] += std::log(vm[idx]);
    }
    const double cell_pts = std::pow(static_cast<double>(q), d);
    double h = 0.0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0) continue;
        const double frac = static_cast<double>(counts[c]) / ens.N;
        h += frac * (std::log(M * frac) - cell_logmu[c] / cell_pts);
    }
    return h;
}

double chaos_distance(const ParticleEnsemble& ens, const FourierField& mu,
                      double bandwidth) {
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("chaos_distance: bandwidth must be > 0");
    const int d = ens.d;
    const int n = mu.n();
    // modes the mollifier keeps above 1e-14
    const int kcut = static_cast<int>(std::floor(
        std::sqrt(std::log(1e14) / (4.0 * M_PI * M_PI * bandwidth)))) ;
    if (kcut > n / 2 - 1)
        throw std::invalid_argument("chaos_distance: bandwidth does not resolve the grid");
    const int width = 2 * kcut + 1;

    // per-axis phase tables e^{-2 pi i k x_a}
    std::vector<std::complex<double>> phases(
        static_cast<std::size_t>(ens.N) * d * width);
    for (int i = 0; i < ens.N; ++i)
        for (int a = 0; a < d; ++a) {
            const double x = ens.pos[static_cast<std::size_t>(i) * d + a];
            for (int k = -kcut; k <= kcut; ++k)
                phases[(static_cast<std::size_t>(i) * d + a) * width + (k + kcut)] =
                    std::polar(1.0, -2.0 * M_PI * k * x);
        }

    const auto& cm = mu.coeffs();
    double sum = 0.0;
    int kvec[3] = {0, 0, 0};
    const int axes = d;
    std::function<void(int)> recurse = [&](int axis) {
        if (axis == axes) {
            std::int64_t k2 = 0;
            for (int a = 0; a < d; ++a) k2 += static_cast<std::int64_t>(kvec[a]) * kvec[a];
            const double w = heat_multiplier(k2, bandwidth, 1.0);
            if (w < 1e-14) return;
            std::complex<double> emp(0.0, 0.0);
            for (int i = 0; i < ens.N; ++i) {
                std::complex<double> p(1.0, 0.0);
                for (int a = 0; a < d; ++a)
                    p *= phases[(static_cast<std::size_t>(i) * d + a) * width +
                                (kvec[a] + kcut)];
                emp += p;
            }
            emp /= static_cast<double>(ens.N);
            std::size_t idx = 0;
            for (int a = 0; a < d; ++a) {
                int j = kvec[a];
                if (j < 0) j += n;
                idx = idx * n + static_cast<std::size_t>(j);
            }
            sum += w * w * std::norm(emp - cm[idx]);
            return;
        }
        for (int k = -kcut; k <= kcut; ++k) {
            kvec[axis] = k;
            recurse(axis + 1);
        }
    };
    recurse(0);
    return std::sqrt(sum);
}

AliasSampler::AliasSampler(const FourierField& density)
    : d_(density.dim()), n_(density.n()) {
    const auto& v = density.values();
    const std::size_t M = v.size();
    std::vector<double> p(M);
    double total = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        if (v[i] < -1e-12)
            throw std::invalid_argument("AliasSampler: negative density sample");
        p[i] = std::max(0.0, v[i]);
        total += p[i];
    }
    if (total <= 0.0) throw std::invalid_argument("AliasSampler: zero mass");
    for (double& x : p) x = x / total * M;

    prob_.assign(M, 0.0);
    alias_.assign(M, 0);
    std::vector<std::uint32_t> small, large;
    small.reserve(M);
    large.reserve(M);
    for (std::size_t i = 0; i < M; ++i)
        (p[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        small.pop_back();
        const std::uint32_t l = large.back();
        prob_[s] = p[s];
        alias_[s] = l;
        p[l] = (p[l] + p[s]) - 1.0;
        if (p[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (std::uint32_t i : large) prob_[i] = 1.0;
    for (std::uint32_t i : small) prob_[i] = 1.0;
}

void AliasSampler::sample(std::mt19937_64& rng, double* x) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t M = prob_.size();
    std::size_t cell = std::min<std::size_t>(M - 1,
        static_cast<std::size_t>(u(rng) * static_cast<double>(M)));
    if (u(rng) >= prob_[cell]) cell = alias_[cell];
    // decode row-major cell to per-axis indices, jitter inside the cell
    std::size_t rem = cell;
    for (int a = d_ - 1; a >= 0; --a) {
        const int j = static_cast<int>(rem % n_);
        rem /= n_;
        // cell j covers [x_j - h/2, x_j + h/2) around the sample point
        const double h = 1.0 / n_;
        x[a] = wrap_half(-0.5 + (j + u(rng)) * h - 0.5 * h);
    }
    // noise drawn in axis order a = d-1 .. 0 above; order is fixed and
    // deterministic for a given seed
}

} // namespace lgas
