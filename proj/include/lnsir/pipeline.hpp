#ifndef LNSIR_PIPELINE_HPP
#define LNSIR_PIPELINE_HPP

#include "lnsir/correlation.hpp"
#include "lnsir/mgf.hpp"
#include "lnsir/scenario.hpp"
#include "lnsir/sir_se.hpp"

namespace lnsir::pipeline {

/// Full analytical chain for one scene: composite reduction, MGF matching,
/// correlation transfer, SIR distribution and SE KPIs.
struct AnalysisResult {
    scenario::SumModelBundle sum_model;
    mgf::EquivalentLognormal equivalent;
    double rho_linear = 0.0;
    double rho_db = 0.0;
    bool rho_clamped = false;
    sir_se::SirDistribution sir;
    sir_se::SeKpis kpis;
    bool point_mass = false;  // sigma_Gamma == 0
};

AnalysisResult analyze(const scenario::NetworkScene& scene,
                       const mgf::MatchingConfig& matching, double alpha,
                       sir_se::SeUnit unit);

}  // namespace lnsir::pipeline

#endif
