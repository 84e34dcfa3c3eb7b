#include "lgas/constants.hpp"
#include "lgas/special_functions.hpp"

#include <cmath>

namespace lgas {

DimensionConstants dimension_constants(int d) {
    if (d < 1) throw std::invalid_argument("dimension_constants: d must be >= 1");
    DimensionConstants c;
    c.d = d;
    // c_d = Gamma(d/2) (4 pi)^{d/2} / 2, computed in log space to stay exact
    // in the double range up to d = 17 and beyond.
    c.c_d = 0.5 * std::exp(std::lgamma(0.5 * d) + 0.5 * d * std::log(4.0 * M_PI));
    c.beta_c = 2.0 * d;
    c.beta_s = std::pow(2.0 * M_PI, d) / c.c_d;
    return c;
}

double log_hls_constant(int d) {
    if (d < 1) throw std::invalid_argument("log_hls_constant: d must be >= 1");
    const double half_log_pi = 0.5 * std::log(M_PI);
    const double gamma_ratio = (std::lgamma(0.5 * d) - std::lgamma(1.0 * d)) / d;
    const double psi_term = 0.5 * (digamma(1.0 * d) - digamma(0.5 * d));
    return half_log_pi + gamma_ratio + psi_term;
}

} // namespace lgas
