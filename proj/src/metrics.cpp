#include "lnsir/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lnsir::metrics {

double ksd(const montecarlo::EmpiricalCdf& emp, const Cdf& analytic_cdf) {
    const auto& xs = emp.sorted();
    const auto n = xs.size();
    if (n < 100) throw std::invalid_argument("ksd: need at least 100 samples");

    // monotonicity check on a grid over the sample range
    const double lo = xs.front();
    const double hi = xs.back();
    double prev = analytic_cdf(lo);
    for (int i = 1; i < 1000; ++i) {
        const double x = lo + (hi - lo) * i / 999.0;
        const double f = analytic_cdf(x);
        if (f < prev - 1e-12)
            throw std::invalid_argument("ksd: analytic CDF is not monotone");
        prev = f;
    }

    double d = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double f = analytic_cdf(xs[i]);
        const double above = static_cast<double>(i + 1) / n - f;  // F_hat(x) - F
        const double below = f - static_cast<double>(i) / n;      // F - F_hat(x-)
        d = std::max({d, above, below});
    }
    return d;
}

double kld(const montecarlo::EmpiricalCdf& emp, const Pdf& analytic_pdf,
           int bins, double lo, double hi, bool* q_floor_hit) {
    if (bins < 10) throw std::invalid_argument("kld: need at least 10 bins");
    if (!(hi > lo)) throw std::domain_error("kld: degenerate support");
    if (q_floor_hit) *q_floor_hit = false;

    const auto& xs = emp.sorted();
    const double width = (hi - lo) / bins;

    std::vector<double> p(static_cast<size_t>(bins), 0.0);
    std::int64_t in_support = 0;
    for (const double x : xs) {
        if (x < lo || x >= hi) continue;
        const int b = std::min(static_cast<int>((x - lo) / width), bins - 1);
        p[static_cast<size_t>(b)] += 1.0;
        ++in_support;
    }
    if (in_support == 0) throw std::domain_error("kld: no samples in support");
    for (auto& v : p) v /= static_cast<double>(in_support);

    // per-cell analytic mass: 4-point midpoint rule, then renormalize
    std::vector<double> q(static_cast<size_t>(bins), 0.0);
    double q_total = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double a = lo + b * width;
        double mass = 0.0;
        for (int j = 0; j < 4; ++j)
            mass += analytic_pdf(a + (j + 0.5) * width / 4.0);
        mass *= width / 4.0;
        q[static_cast<size_t>(b)] = mass;
        q_total += mass;
    }
    if (!(q_total > 0.0)) throw std::domain_error("kld: analytic mass is zero on support");
    for (auto& v : q) v /= q_total;

    double div = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double pi = p[static_cast<size_t>(b)];
        if (pi <= 0.0) continue;
        double qi = q[static_cast<size_t>(b)];
        if (qi <= 0.0) {
            qi = 1e-30;
            if (q_floor_hit) *q_floor_hit = true;
        }
        div += pi * std::log(pi / qi);
    }
    return div;
}

FitReport fit_report(const montecarlo::EmpiricalCdf& emp,
                     const Cdf& analytic_cdf, const Pdf& analytic_pdf,
                     int bins) {
    FitReport report;
    report.bins = bins;
    report.support_lo = emp.quantile(0.0005);
    report.support_hi = emp.quantile(0.9995);
    report.ksd = ksd(emp, analytic_cdf);
    report.kld = kld(emp, analytic_pdf, bins, report.support_lo,
                     report.support_hi, &report.q_floor_hit);
    return report;
}

}  // namespace lnsir::metrics
