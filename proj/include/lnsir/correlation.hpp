#ifndef LNSIR_CORRELATION_HPP
#define LNSIR_CORRELATION_HPP

#include <vector>

#include "lnsir/fading.hpp"
#include "lnsir/scenario.hpp"

namespace lnsir::correlation {

/// Linear-domain correlation between two lognormals from their dB-domain
/// (normal) correlation:
///   rho_lin = (exp(rho_db s0 sk / xi^2) - 1)
///             / sqrt((e^{s0^2/xi^2}-1)(e^{sk^2/xi^2}-1)).
double rho_linear_from_db(double rho_db, double sigma0_db, double sigmak_db);

/// Correlation between the desired linear power Y0 and the gated
/// interference sum: rho_{Y0,Y} = sum_k p_k rho_{Y0,Yk} sigma_{Yk} / sigma_Y.
/// sigma_y is the linear std of the matched equivalent lognormal.
double rho_linear_sum(const fading::LognormalParams& desired,
                      const scenario::CorrelatedSumModel& model,
                      const std::vector<double>& rho_pairs_db, double sigma_y);

struct DbCorrelation {
    double value = 0.0;
    bool clamped = false;  // set if the result was nudged back into [-1,1]
};

/// dB-domain correlation from the linear-domain one:
///   rho_db = xi^2 ln(rho_lin sqrt(e^{(s0/xi)^2}-1) sqrt(e^{(sX/xi)^2}-1) + 1)
///            / (s0 sX).
DbCorrelation rho_db_from_linear(double rho_linear, double sigma0_db,
                                 double sigmax_db);

}  // namespace lnsir::correlation

#endif
