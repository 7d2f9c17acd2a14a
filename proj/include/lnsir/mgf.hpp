#ifndef LNSIR_MGF_HPP
#define LNSIR_MGF_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "lnsir/fading.hpp"
#include "lnsir/numerics.hpp"
#include "lnsir/scenario.hpp"

namespace lnsir::mgf {

using scenario::CorrelatedSumModel;

struct MatchingConfig {
    int quad_order = 8;
    double s1 = 1.0;
    double s2 = 0.2;
    double residual_tol = 1e-12;
    std::int64_t max_terms = 100'000'000;  // tensor-grid capacity N^K
    std::int64_t mc_fallback_samples = 1'000'000;
    std::uint64_t seed = 12345;
};

enum class MatchMethod { TensorQuadrature, McExpectation };

struct EquivalentLognormal {
    fading::LognormalParams params;
    double residual_s1 = 0.0;
    double residual_s2 = 0.0;
    MatchMethod method = MatchMethod::TensorQuadrature;
};

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gauss-Hermite tensor-grid evaluation of the MGF of the gated correlated
/// lognormal sum, E[prod_k (1 - p_k + p_k exp(-s Y_k))]. The K-dimensional
/// grid is traversed without materializing it. Throws CapacityError when
/// order^K exceeds max_terms.
double mgf_sum(double s, const CorrelatedSumModel& model,
               const numerics::QuadratureRule& rule,
               std::int64_t max_terms = 100'000'000);

/// Monte Carlo evaluation of the same expectation over correlated Gaussian
/// draws; deterministic for a fixed seed.
double mgf_sum_mc(double s, const CorrelatedSumModel& model,
                  std::int64_t samples, std::uint64_t seed);

/// Gauss-Hermite MGF of a single lognormal. sigma = 0 collapses to the
/// exact point-mass value exp(-s * 10^(mu/10)).
double mgf_single(double s, const fading::LognormalParams& params,
                  const numerics::QuadratureRule& rule);

/// Fenton-Wilkinson moment match of the gated correlated sum; used to
/// initialize the MGF-matching solver.
fading::LognormalParams fenton_wilkinson_init(const CorrelatedSumModel& model);

/// Solves the two-point MGF matching system for the equivalent lognormal.
/// Powers are normalized to max mu_k = 0 dB before matching and the result
/// is shifted back, so the fixed s-points stay meaningful at any power level.
EquivalentLognormal match_equivalent_lognormal(const CorrelatedSumModel& model,
                                               const MatchingConfig& cfg);

}  // namespace lnsir::mgf

#endif
