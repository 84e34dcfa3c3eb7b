#include "lgas/special_functions.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace lgas {

double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma: x must be > 0");
    double result = 0.0;
    // psi(x) = psi(x+1) - 1/x, shift until x >= 10
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic series psi(x) ~ log x - 1/(2x) - sum B_{2n}/(2n x^{2n})
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv;
    // B_2/2 = 1/12, B_4/4 = -1/120, B_6/6 = 1/252, B_8/8 = -1/240,
    // B_10/10 = 1/132, B_12/12 = -691/32760
    result -= inv2 * (1.0 / 12.0
             - inv2 * (1.0 / 120.0
             - inv2 * (1.0 / 252.0
             - inv2 * (1.0 / 240.0
             - inv2 * (1.0 / 132.0
             - inv2 * (691.0 / 32760.0))))));
    return result;
}

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-based initial guess.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        nodes[i] = xm - xl * z;
        nodes[n - 1 - i] = xm + xl * z;
        weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

namespace {

// Cubic-interpolated J0 table. Step 0.005 keeps the interpolation error
// below ~3e-11, well under the quadrature tolerances that consume it.
constexpr double kJ0Step = 0.005;
constexpr double kJ0Max = 1024.0;
std::vector<double> g_j0_table;
std::once_flag g_j0_once;

void build_j0_table() {
    const std::size_t count = static_cast<std::size_t>(kJ0Max / kJ0Step) + 4;
    g_j0_table.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        g_j0_table[i] = std::cyl_bessel_j(0.0, i * kJ0Step);
}

} // namespace

double bessel_j0_fast(double z) {
    z = std::abs(z);
    if (z >= kJ0Max) return std::cyl_bessel_j(0.0, z);
    std::call_once(g_j0_once, build_j0_table);
    const double u = z / kJ0Step;
    std::size_t i = static_cast<std::size_t>(u);
    if (i < 1) {
        // series near zero: J0(z) = 1 - z^2/4 + z^4/64 - z^6/2304
        const double z2 = z * z;
        return 1.0 - z2 / 4.0 + z2 * z2 / 64.0 - z2 * z2 * z2 / 2304.0;
    }
    const double t = u - i;
    const double ym1 = g_j0_table[i - 1];
    const double y0 = g_j0_table[i];
    const double y1 = g_j0_table[i + 1];
    const double y2 = g_j0_table[i + 2];
    // Catmull-Rom cubic through the four surrounding nodes.
    const double a0 = y0;
    const double a1 = 0.5 * (y1 - ym1);
    const double a2 = ym1 - 2.5 * y0 + 2.0 * y1 - 0.5 * y2;
    const double a3 = 0.5 * (y2 - ym1) + 1.5 * (y0 - y1);
    return a0 + t * (a1 + t * (a2 + t * a3));
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 points of equal count");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

} // namespace lgas
