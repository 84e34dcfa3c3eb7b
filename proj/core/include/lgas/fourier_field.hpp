#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace lgas {

/// Real scalar field on the uniform grid of [-1/2, 1/2)^d with lazily
/// synchronized physical samples and Fourier coefficients.
///
/// values[j] = mu(x_j), x_j = -1/2 + j/n per axis, row-major.
/// coeffs[k] = (1/n^d) sum_j values[j] e^{-2 pi i k.x_j}, i.e. true Fourier
/// coefficients: mean = coeffs[0], conjugate symmetry for real fields.
class FourierField {
public:
    FourierField() = default;
    FourierField(int d, int n, double fill = 0.0);

    static FourierField uniform(int d, int n) { return FourierField(d, n, 1.0); }

    int dim() const { return d_; }
    int n() const { return n_; }
    std::size_t size() const { return values_.size(); }

    const std::vector<double>& values() const;
    std::vector<double>& mutable_values();
    const std::vector<std::complex<double>>& coeffs() const;
    std::vector<std::complex<double>>& mutable_coeffs();

    double mean() const;
    double grid_coord(int j) const { return -0.5 + static_cast<double>(j) / n_; }
    int freq(int j) const { return j < n_ / 2 ? j : j - n_; }

    /// values >= -1e-12 and grid mean = 1 within 1e-10
    bool is_probability_density() const;

    /// max over modes of |coeffs|; used by blow-up detection
    double max_coeff_abs() const;

private:
    void sync_values() const;
    void sync_coeffs() const;

    int d_ = 0;
    int n_ = 0;
    mutable std::vector<double> values_;
    mutable std::vector<std::complex<double>> coeffs_;
    mutable bool values_valid_ = false;
    mutable bool coeffs_valid_ = false;
};

/// Invoke fn(linear index, k[3], |k|^2) for every mode of the n^d grid.
template <typename Fn>
void for_each_mode(int d, int n, Fn&& fn) {
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
    int k[3] = {0, 0, 0};
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::int64_t k2 = 0;
        for (int a = d - 1; a >= 0; --a) {
            const int j = static_cast<int>(rem % n);
            rem /= n;
            k[a] = (j < n / 2) ? j : j - n;
            k2 += static_cast<std::int64_t>(k[a]) * k[a];
        }
        fn(idx, k, k2);
    }
}

namespace detail {
/// In-place unnormalized c2c transforms with the origin-at(-1/2) parity
/// phase folded in, so arrays hold true Fourier coefficients after forward
/// (once divided by n^d, done inside) and true samples after backward.
void spectral_forward(int d, int n, std::complex<double>* data);
void spectral_backward(int d, int n, std::complex<double>* data);
} // namespace detail

} // namespace lgas
