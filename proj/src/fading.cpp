#include "lnsir/fading.hpp"

#include <cmath>
#include <stdexcept>

#include "lnsir/numerics.hpp"

namespace lnsir::fading {

LognormalParams composite_to_lognormal(const LognormalParams& shadow,
                                       const GammaFading& fading) {
    if (!(fading.m >= 0.5))
        throw std::domain_error("composite_to_lognormal: m must be >= 0.5");
    if (shadow.sigma_db < 0.0)
        throw std::domain_error("composite_to_lognormal: sigma_db must be >= 0");
    if (std::isinf(fading.m)) return shadow;  // no-fading sentinel

    const double shift = kXi * (numerics::digamma(fading.m) - std::log(fading.m));
    const double var = shadow.sigma_db * shadow.sigma_db +
                       kXi * kXi * numerics::trigamma(fading.m);
    return LognormalParams{shadow.mu_db + shift, std::sqrt(var)};
}

std::pair<double, double> lognormal_linear_moments(const LognormalParams& p) {
    if (p.sigma_db < 0.0)
        throw std::domain_error("lognormal_linear_moments: sigma_db must be >= 0");
    const double s = p.sigma_db / kXi;
    const double mean = std::exp(p.mu_db / kXi + 0.5 * s * s);
    const double var =
        (std::exp(s * s) - 1.0) * std::exp(2.0 * p.mu_db / kXi + s * s);
    return {mean, std::sqrt(var)};
}

}  // namespace lnsir::fading
