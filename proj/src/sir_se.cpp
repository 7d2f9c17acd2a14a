#include "lnsir/sir_se.hpp"

#include <cmath>
#include <stdexcept>

#include "lnsir/numerics.hpp"

namespace lnsir::sir_se {

using fading::kXi;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;
}  // namespace

SirDistribution sir_distribution(const fading::LognormalParams& desired,
                                 const fading::LognormalParams& equivalent,
                                 double rho_db) {
    if (rho_db < -1.0 || rho_db > 1.0)
        throw std::domain_error("sir_distribution: rho outside [-1,1]");
    const double s0 = desired.sigma_db;
    const double sx = equivalent.sigma_db;
    double var = s0 * s0 + sx * sx - 2.0 * rho_db * s0 * sx;
    var = std::max(var, 0.0);  // rounding guard; nonnegative for rho in [-1,1]
    return SirDistribution{desired.mu_db - equivalent.mu_db, std::sqrt(var)};
}

double sir_pdf(const SirDistribution& dist, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("sir_pdf: gamma must be positive");
    if (!(dist.sigma_db > 0.0))
        throw std::domain_error("sir_pdf: degenerate distribution (sigma = 0)");
    const double z = (kXi * std::log(gamma) - dist.mu_db) / dist.sigma_db;
    return kXi / (kSqrt2Pi * dist.sigma_db * gamma) * std::exp(-0.5 * z * z);
}

double sir_cdf(const SirDistribution& dist, double gamma) {
    if (!(gamma > 0.0)) return 0.0;
    const double gamma_db = 10.0 * std::log10(gamma);
    if (dist.sigma_db == 0.0) return gamma_db >= dist.mu_db ? 1.0 : 0.0;
    return numerics::normal_cdf((gamma_db - dist.mu_db) / dist.sigma_db);
}

double se_pdf(const SirDistribution& dist, double r_nats) {
    if (!(r_nats > 0.0)) throw std::domain_error("se_pdf: r must be positive");
    if (!(dist.sigma_db > 0.0))
        throw std::domain_error("se_pdf: degenerate distribution (sigma = 0)");
    const double er = std::exp(r_nats);
    const double g = er - 1.0;  // linear SIR at this rate
    const double z = (10.0 * std::log10(g) - dist.mu_db) / dist.sigma_db;
    return kXi * er / (g * kSqrt2Pi * dist.sigma_db) * std::exp(-0.5 * z * z);
}

double se_cdf(const SirDistribution& dist, double r_nats) {
    if (!(r_nats > 0.0)) return 0.0;
    return sir_cdf(dist, std::expm1(r_nats));
}

SeKpis se_kpis(const SirDistribution& dist, double alpha, SeUnit unit,
               int quad_order) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("se_kpis: alpha must be in (0,1)");
    if (quad_order < 32) quad_order = 32;

    const double scale = unit == SeUnit::Bits ? 1.0 / std::log(2.0) : 1.0;

    SeKpis out;
    out.alpha = alpha;
    out.unit = unit;

    if (dist.sigma_db == 0.0) {
        const double se = std::log1p(std::pow(10.0, dist.mu_db / 10.0)) * scale;
        out.mean_se = se;
        out.outage_se = se;
        return out;
    }

    // mean: E[ln(1 + 10^((mu + sqrt(2) sigma a)/10))] over the normal SIR_dB
    const auto rule = numerics::gauss_hermite(quad_order);
    double mean = 0.0;
    for (int n = 0; n < rule.order; ++n) {
        const double g_db = dist.mu_db + kSqrt2 * dist.sigma_db * rule.nodes[n];
        mean += rule.weights[n] / kSqrtPi * std::log1p(std::pow(10.0, g_db / 10.0));
    }
    out.mean_se = mean * scale;

    const double q_db =
        dist.mu_db + dist.sigma_db * numerics::normal_cdf_inv(alpha);
    out.outage_se = std::log1p(std::pow(10.0, q_db / 10.0)) * scale;
    return out;
}

}  // namespace lnsir::sir_se
