#ifndef LNSIR_METRICS_HPP
#define LNSIR_METRICS_HPP

#include <functional>

#include "lnsir/montecarlo.hpp"

namespace lnsir::metrics {

struct FitReport {
    double kld = 0.0;  // nats, D(simulated || analytical)
    double ksd = 0.0;
    int bins = 0;
    double support_lo = 0.0;
    double support_hi = 0.0;
    bool q_floor_hit = false;  // an occupied bin had zero analytic mass
};

using Cdf = std::function<double(double)>;
using Pdf = std::function<double(double)>;

/// Exact one-sample Kolmogorov-Smirnov statistic against an analytic CDF.
/// The CDF is checked for monotonicity on a 1000-point grid over the
/// sample range.
double ksd(const montecarlo::EmpiricalCdf& emp, const Cdf& analytic_cdf);

/// Histogram KL divergence D(P || Q): P from the samples on equal-width
/// bins over [lo, hi], Q from the analytic density integrated per cell
/// (4-point midpoint), renormalized over the support.
double kld(const montecarlo::EmpiricalCdf& emp, const Pdf& analytic_pdf,
           int bins, double lo, double hi, bool* q_floor_hit = nullptr);

/// Both metrics with the default binning: 200 bins over the
/// [0.05%, 99.95%] sample quantile range.
FitReport fit_report(const montecarlo::EmpiricalCdf& emp,
                     const Cdf& analytic_cdf, const Pdf& analytic_pdf,
                     int bins = 200);

}  // namespace lnsir::metrics

#endif
