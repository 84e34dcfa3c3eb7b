#pragma once

#include <stdexcept>

namespace lgas {

/// Dimension-dependent constants of the attractive log gas on T^d.
///
/// c_d normalizes the periodic log potential, beta_c = 2d is the critical
/// inverse temperature for lower-boundedness of the free energy, and
/// beta_s = (2 pi)^d / c_d is the sharp stability threshold of the uniform
/// state. For d = 1 the two thresholds coincide; beta_s > beta_c for
/// 2 <= d <= 10 and beta_s < beta_c for d >= 11.
struct DimensionConstants {
    int d;
    double c_d;     // Gamma(d/2) (4 pi)^{d/2} / 2
    double beta_c;  // 2 d
    double beta_s;  // (2 pi)^d / c_d = 2 pi^{d/2} / Gamma(d/2)
};

DimensionConstants dimension_constants(int d);

/// Sharp constant C_0 of the logarithmic HLS inequality on R^d,
/// C_0 = (log pi)/2 + (1/d) log(Gamma(d/2)/Gamma(d)) + (psi(d) - psi(d/2))/2.
double log_hls_constant(int d);

} // namespace lgas
