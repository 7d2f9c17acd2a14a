#include "lnsir/pipeline.hpp"

#include <cmath>

namespace lnsir::pipeline {

AnalysisResult analyze(const scenario::NetworkScene& scene,
                       const mgf::MatchingConfig& matching, double alpha,
                       sir_se::SeUnit unit) {
    AnalysisResult out;
    out.sum_model = scenario::build_sum_model(scene);
    out.equivalent = mgf::match_equivalent_lognormal(out.sum_model.interference,
                                                     matching);

    const double sigma0 = out.sum_model.desired.sigma_db;
    const double sigmax = out.equivalent.params.sigma_db;
    if (sigma0 > 0.0 && sigmax > 0.0) {
        const auto [mean_y, std_y] =
            fading::lognormal_linear_moments(out.equivalent.params);
        out.rho_linear = correlation::rho_linear_sum(
            out.sum_model.desired, out.sum_model.interference,
            out.sum_model.rho_pairs, std_y);
        const auto db = correlation::rho_db_from_linear(out.rho_linear, sigma0,
                                                        sigmax);
        out.rho_db = db.value;
        out.rho_clamped = db.clamped;
    }

    out.sir = sir_se::sir_distribution(out.sum_model.desired,
                                       out.equivalent.params, out.rho_db);
    out.point_mass = out.sir.sigma_db == 0.0;
    out.kpis = sir_se::se_kpis(out.sir, alpha, unit);
    return out;
}

}  // namespace lnsir::pipeline
