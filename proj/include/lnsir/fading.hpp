#ifndef LNSIR_FADING_HPP
#define LNSIR_FADING_HPP

#include <utility>

namespace lnsir::fading {

/// dB <-> natural-log conversion constant, 10/ln(10).
constexpr double kXi = 4.3429448190325175;

/// A lognormal RV described in the dB domain: 10*log10 of the variate
/// is normal with mean mu_db and standard deviation sigma_db.
struct LognormalParams {
    double mu_db = 0.0;
    double sigma_db = 0.0;
};

/// Unit-mean Gamma power fading (Nakagami-m), shape m >= 0.5, scale 1/m.
/// m = 1 is Rayleigh; +infinity acts as a no-fading sentinel.
struct GammaFading {
    double m = 1.0;
};

/// Approximates the product of unit-mean Gamma fading and lognormal
/// shadowing by a single lognormal, matching the mean and variance of the
/// log of the product:
///   mu'    = mu + xi * (psi(m) - ln m)
///   sigma' = sqrt(sigma^2 + xi^2 * psi'(m))
LognormalParams composite_to_lognormal(const LognormalParams& shadow,
                                       const GammaFading& fading);

/// Linear-domain mean and standard deviation of a dB-domain lognormal.
std::pair<double, double> lognormal_linear_moments(const LognormalParams& p);

}  // namespace lnsir::fading

#endif
