#include "lgas/fourier_field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lgas {

namespace {

struct FftSlot {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t total = 0;
};

std::mutex g_plan_mutex;

// One plan+buffer pair per (d, n) per thread; plan creation is serialized.
FftSlot& slot_for(int d, int n) {
    thread_local std::map<std::pair<int, int>, FftSlot> slots;
    FftSlot& s = slots[{d, n}];
    if (!s.buf) {
        std::size_t total = 1;
        for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
        s.total = total;
        s.buf = fftw_alloc_complex(total);
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        int dims[3] = {n, n, n};
        s.fwd = fftw_plan_dft(d, dims, s.buf, s.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        s.bwd = fftw_plan_dft(d, dims, s.buf, s.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    return s;
}

void apply_parity(int d, int n, std::complex<double>* data) {
    for_each_mode(d, n, [&](std::size_t idx, const int* k, std::int64_t) {
        int parity = 0;
        for (int a = 0; a < d; ++a) parity += k[a];
        if (parity & 1) data[idx] = -data[idx];
    });
}

} // namespace

namespace detail {

void spectral_forward(int d, int n, std::complex<double>* data) {
    FftSlot& s = slot_for(d, n);
    auto* raw = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(s.fwd, raw, raw);
    const double scale = 1.0 / static_cast<double>(s.total);
    for (std::size_t i = 0; i < s.total; ++i) data[i] *= scale;
    apply_parity(d, n, data);
}

void spectral_backward(int d, int n, std::complex<double>* data) {
    FftSlot& s = slot_for(d, n);
    apply_parity(d, n, data);
    auto* raw = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(s.bwd, raw, raw);
}

} // namespace detail

FourierField::FourierField(int d, int n, double fill) : d_(d), n_(n) {
    if (d < 1 || d > 3)
        throw std::invalid_argument("FourierField: d must be in {1,2,3}");
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("FourierField: n must be a power of two");
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
    values_.assign(total, fill);
    values_valid_ = true;
    coeffs_valid_ = false;
}

void FourierField::sync_values() const {
    if (values_valid_) return;
    if (!coeffs_valid_) throw std::logic_error("FourierField: empty field");
    std::vector<std::complex<double>> work(coeffs_);
    detail::spectral_backward(d_, n_, work.data());
    values_.resize(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) values_[i] = work[i].real();
    values_valid_ = true;
}

void FourierField::sync_coeffs() const {
    if (coeffs_valid_) return;
    if (!values_valid_) throw std::logic_error("FourierField: empty field");
    coeffs_.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) coeffs_[i] = values_[i];
    detail::spectral_forward(d_, n_, coeffs_.data());
    coeffs_valid_ = true;
}

const std::vector<double>& FourierField::values() const {
    sync_values();
    return values_;
}

std::vector<double>& FourierField::mutable_values() {
    sync_values();
    coeffs_valid_ = false;
    return values_;
}

const std::vector<std::complex<double>>& FourierField::coeffs() const {
    sync_coeffs();
    return coeffs_;
}

std::vector<std::complex<double>>& FourierField::mutable_coeffs() {
    sync_coeffs();
    values_valid_ = false;
    return coeffs_;
}

double FourierField::mean() const {
    if (coeffs_valid_) return coeffs_[0].real();
    double sum = 0.0;
    for (double v : values()) sum += v;
    return sum / static_cast<double>(values_.size());
}

bool FourierField::is_probability_density() const {
    for (double v : values())
        if (v < -1e-12) return false;
    return std::abs(mean() - 1.0) <= 1e-10;
}

double FourierField::max_coeff_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs()) m = std::max(m, std::abs(c));
    return m;
}

} // namespace lgas
