#include "lnsir/correlation.hpp"

#include <cmath>
#include <stdexcept>

namespace lnsir::correlation {

using fading::kXi;

double rho_linear_from_db(double rho_db, double sigma0_db, double sigmak_db) {
    if (sigma0_db == 0.0 || sigmak_db == 0.0) return 0.0;
    const double s0 = sigma0_db / kXi;
    const double sk = sigmak_db / kXi;
    const double num = std::exp(rho_db * s0 * sk) - 1.0;
    const double den =
        std::sqrt((std::exp(s0 * s0) - 1.0) * (std::exp(sk * sk) - 1.0));
    return num / den;
}

double rho_linear_sum(const fading::LognormalParams& desired,
                      const scenario::CorrelatedSumModel& model,
                      const std::vector<double>& rho_pairs_db, double sigma_y) {
    if (!(sigma_y > 0.0))
        throw std::domain_error("rho_linear_sum: sigma_y must be positive");
    if (rho_pairs_db.size() != static_cast<size_t>(model.size()))
        throw std::invalid_argument("rho_linear_sum: rho_pairs size mismatch");

    double acc = 0.0;
    for (int k = 0; k < model.size(); ++k) {
        const double sigmak_db = std::sqrt(model.cov(k, k));
        const double rho_lin =
            rho_linear_from_db(rho_pairs_db[k], desired.sigma_db, sigmak_db);
        const auto [mean_k, std_k] = fading::lognormal_linear_moments(
            fading::LognormalParams{model.mu[k], sigmak_db});
        acc += model.p[k] * rho_lin * std_k;
    }
    return acc / sigma_y;
}

DbCorrelation rho_db_from_linear(double rho_linear, double sigma0_db,
                                 double sigmax_db) {
    if (!(sigma0_db > 0.0 && sigmax_db > 0.0))
        throw std::domain_error("rho_db_from_linear: sigmas must be positive");
    const double s0 = sigma0_db / kXi;
    const double sx = sigmax_db / kXi;
    const double arg = rho_linear * std::sqrt(std::exp(s0 * s0) - 1.0) *
                           std::sqrt(std::exp(sx * sx) - 1.0) +
                       1.0;
    if (!(arg > 0.0))
        throw std::domain_error(
            "rho_db_from_linear: rho_linear below the attainable lower bound");

    DbCorrelation out;
    out.value = std::log(arg) / (s0 * sx);
    if (out.value > 1.0 || out.value < -1.0) {
        if (std::abs(out.value) > 1.0 + 1e-9)
            throw std::domain_error(
                "rho_db_from_linear: result outside [-1,1] beyond tolerance");
        out.value = out.value > 0.0 ? 1.0 : -1.0;
        out.clamped = true;
    }
    return out;
}

}  // namespace lnsir::correlation
