#ifndef LNSIR_SIR_SE_HPP
#define LNSIR_SIR_SE_HPP

#include "lnsir/fading.hpp"

namespace lnsir::sir_se {

/// Normal dB-domain SIR: Gamma_dB ~ N(mu_db, sigma_db^2).
struct SirDistribution {
    double mu_db = 0.0;
    double sigma_db = 0.0;
};

enum class SeUnit { Bits, Nats };

struct SeKpis {
    double mean_se = 0.0;    // per-Hz, in the requested unit
    double outage_se = 0.0;  // alpha-percentile
    double alpha = 0.1;
    SeUnit unit = SeUnit::Bits;
};

/// mu_Gamma = mu_X0 - mu_X; sigma_Gamma^2 = s0^2 + sX^2 - 2 rho s0 sX.
SirDistribution sir_distribution(const fading::LognormalParams& desired,
                                 const fading::LognormalParams& equivalent,
                                 double rho_db);

/// Lognormal SIR density in the linear domain.
double sir_pdf(const SirDistribution& dist, double gamma);

/// SIR CDF at linear gamma.
double sir_cdf(const SirDistribution& dist, double gamma);

/// Density of the spectral efficiency R = ln(1 + Gamma) (nats/s/Hz),
/// the change-of-variables image of the lognormal SIR density.
double se_pdf(const SirDistribution& dist, double r_nats);

/// CDF of R = ln(1 + Gamma) at r (nats).
double se_cdf(const SirDistribution& dist, double r_nats);

/// Mean SE via Gauss-Hermite expectation (order >= 32) and exact
/// alpha-percentile outage SE via the normal quantile map.
SeKpis se_kpis(const SirDistribution& dist, double alpha, SeUnit unit,
               int quad_order = 48);

}  // namespace lnsir::sir_se

#endif
