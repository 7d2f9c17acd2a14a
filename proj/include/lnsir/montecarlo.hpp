#ifndef LNSIR_MONTECARLO_HPP
#define LNSIR_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lnsir/scenario.hpp"

namespace lnsir::montecarlo {

enum class SimMode {
    Composite,  // raw Gamma x lognormal per link
    Reduced     // lognormal-only with composite-reduced parameters
};

struct SimConfig {
    std::int64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    SimMode mode = SimMode::Reduced;
    int n_threads = 1;
};

/// Aggregate counters kept alongside the samples, used by the statistical
/// sanity checks. Activity counts are taken before the nonempty-active-set
/// conditioning.
struct SimDiagnostics {
    std::vector<std::int64_t> activity_counts;  // per interferer, first draw
    std::int64_t redraws = 0;                   // all-inactive activity redraws
    double gamma_sum = 0.0;                     // fading draws, composite mode
    std::int64_t gamma_count = 0;
    // first-vs-second link dB shadowing cross moments
    double sx0 = 0.0, sx1 = 0.0, sx0x0 = 0.0, sx1x1 = 0.0, sx0x1 = 0.0;
};

struct SampleSet {
    std::vector<double> sir_db;
    SimConfig config;
    std::string scene_digest;
    SimDiagnostics diag;
};

/// Sorted-sample empirical CDF with quantile access.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples);

    double operator()(double x) const;       // F(x) = #(samples <= x)/n
    double quantile(double q) const;         // order statistic, linear interp
    const std::vector<double>& sorted() const { return sorted_; }
    std::int64_t size() const { return static_cast<std::int64_t>(sorted_.size()); }

private:
    std::vector<double> sorted_;
};

/// Direct simulation of the system model: correlated shadowing across the
/// K+1 links, per-link Gamma fading (composite mode), Bernoulli interferer
/// activity with all-inactive vectors redrawn. Deterministic for a fixed
/// seed and independent of n_threads (per-sample counter-based substreams).
SampleSet simulate(const scenario::NetworkScene& scene, const SimConfig& cfg);

EmpiricalCdf empirical_cdf(const SampleSet& samples);

/// Stable digest of the scene geometry and parameters, recorded in sample
/// metadata and CSV headers.
std::string scene_digest(const scenario::NetworkScene& scene);

/// Single-column CSV with a header comment carrying digest and seed.
void export_csv(const SampleSet& samples, const std::string& path);

}  // namespace lnsir::montecarlo

#endif
