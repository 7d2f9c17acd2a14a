// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lnsir/correlation.hpp"
#include "lnsir/fading.hpp"
#include "lnsir/metrics.hpp"
#include "lnsir/mgf.hpp"
#include "lnsir/montecarlo.hpp"
#include "lnsir/numerics.hpp"
#include "lnsir/pipeline.hpp"
#include "lnsir/scenario.hpp"
#include "lnsir/sir_se.hpp"

using namespace lnsir;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass,
            const std::string& detail) {
    std::printf("[%d] %-52s %s  %s\n", idx, name.c_str(),
                pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

scenario::CorrelatedSumModel single_model(double mu, double sigma) {
    scenario::CorrelatedSumModel m;
    m.mu = {mu};
    m.p = {1.0};
    m.cov = numerics::Matrix(1);
    m.cov(0, 0) = sigma * sigma;
    return m;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    const montecarlo::EmpiricalCdf fa(std::move(a));
    const montecarlo::EmpiricalCdf fb(std::move(b));
    double ks = 0.0;
    for (const double x : fa.sorted()) ks = std::max(ks, std::abs(fa(x) - fb(x)));
    for (const double x : fb.sorted()) ks = std::max(ks, std::abs(fa(x) - fb(x)));
    return ks;
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int depth = 28) {
    std::function<double(double, double, double, double, double, double, int)>
        rec = [&](double lo, double hi, double flo, double fmid, double fhi,
                  double whole, int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, flm, fmid, left, d - 1) +
               rec(mid, hi, fmid, frm, fhi, right, d - 1);
    };
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    return rec(a, b, fa, fc, fb, whole, depth);
}

metrics::FitReport fit_against(const montecarlo::SampleSet& samples,
                               const sir_se::SirDistribution& sir) {
    const auto emp = montecarlo::empirical_cdf(samples);
    auto cdf = [&](double x) {
        return numerics::normal_cdf((x - sir.mu_db) / sir.sigma_db);
    };
    auto pdf = [&](double x) {
        const double z = (x - sir.mu_db) / sir.sigma_db;
        return std::exp(-0.5 * z * z) /
               (std::sqrt(2.0 * M_PI) * sir.sigma_db);
    };
    return metrics::fit_report(emp, cdf, pdf);
}

// 1. Gamma x lognormal reduction against the reference dB values.
void criterion_1() {
    struct Row {
        double m, sigma, shift, sigma_hat;
    };
    const Row rows[] = {{5.0, 1.8, -0.45, 2.72},
                        {1.0, 9.6, -2.51, 11.1},
                        {5.0, 3.0, -0.45, 3.63},
                        {1.0, 4.0, -2.51, 6.86},
                        {1.0, 6.0, -2.51, 8.19}};
    double worst = 0.0;
    for (const auto& r : rows) {
        const auto out = fading::composite_to_lognormal(
            fading::LognormalParams{0.0, r.sigma}, fading::GammaFading{r.m});
        worst = std::max({worst, std::abs(out.mu_db - r.shift),
                          std::abs(out.sigma_db - r.sigma_hat)});
    }
    report(1, "composite reduction reference values (0.005 dB)", worst < 0.005,
           fmt("max error %.2e dB", worst));
}

// 2. Matching a single always-on lognormal returns it unchanged.
void criterion_2() {
    mgf::MatchingConfig cfg;
    std::mt19937_64 gen(71);
    std::uniform_real_distribution<double> ud;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const double mu = -80.0 + 80.0 * ud(gen);
        const double sigma = 1.0 + 11.0 * ud(gen);
        const auto out =
            mgf::match_equivalent_lognormal(single_model(mu, sigma), cfg);
        worst = std::max({worst, std::abs(out.params.mu_db - mu),
                          std::abs(out.params.sigma_db - sigma)});
    }
    report(2, "single-lognormal matching identity (1e-6 dB, 20 draws)",
           worst < 1e-6, fmt("max error %.2e dB", worst));
}

// 3. Analytical SIR law vs reduced-mode simulation on six hex layouts.
void criterion_3() {
    mgf::MatchingConfig matching;
    matching.quad_order = 16;
    montecarlo::SimConfig sim;
    sim.n_samples = 1'000'000;
    sim.seed = 11;
    sim.mode = montecarlo::SimMode::Reduced;
    sim.n_threads = 8;

    bool pass = true;
    double worst_ksd = 0.0, worst_kld = 0.0;
    for (const double r : {25.0, 225.0})
        for (const double p : {0.2, 0.5, 1.0}) {
            const auto scene =
                scenario::hex_uma_scene(500.0, r, 0.0, p, 6.0, 0.5);
            const auto res = pipeline::analyze(scene, matching, 0.10,
                                               sir_se::SeUnit::Bits);
            const auto fit = fit_against(montecarlo::simulate(scene, sim),
                                         res.sir);
            worst_ksd = std::max(worst_ksd, fit.ksd);
            worst_kld = std::max(worst_kld, fit.kld);
            pass = pass && fit.ksd <= 0.02 && fit.kld <= 5e-3;
        }
    report(3, "analytic vs simulated SIR, 6 layouts (ksd .02, kld 5e-3)", pass,
           fmt("worst ksd %.4f, worst kld %.2e", worst_ksd, worst_kld));
}

// 4. Composite and reduced simulation modes on the cell-center layout.
void criterion_4() {
    const auto scene = scenario::hex_uma_scene(500.0, 25.0, 0.0, 0.5, 6.0, 0.5);
    montecarlo::SimConfig sim;
    sim.n_samples = 1'000'000;
    sim.seed = 31;
    sim.n_threads = 8;
    sim.mode = montecarlo::SimMode::Composite;
    auto comp = montecarlo::simulate(scene, sim);
    sim.mode = montecarlo::SimMode::Reduced;
    sim.seed = 32;
    auto red = montecarlo::simulate(scene, sim);
    const double ks = two_sample_ks(std::move(comp.sir_db), std::move(red.sir_db));
    report(4, "composite vs reduced simulation (ksd .02)", ks <= 0.02,
           fmt("ksd %.4f", ks));
}

// 5. Monotone KPI trends over UE distance and interferer activity.
void criterion_5() {
    const mgf::MatchingConfig matching;
    auto strictly_decreasing = [](const std::vector<double>& v) {
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i] >= v[i - 1]) return false;
        return true;
    };

    std::vector<double> mean_se, outage_se;
    for (const double r : {25.0, 75.0, 125.0, 175.0, 225.0}) {
        const auto res = pipeline::analyze(
            scenario::hex_uma_scene(500.0, r, 0.0, 0.5, 6.0, 0.5), matching,
            0.10, sir_se::SeUnit::Bits);
        mean_se.push_back(res.kpis.mean_se);
        outage_se.push_back(res.kpis.outage_se);
    }
    std::vector<double> mu_sir;
    for (const double p : {0.2, 0.5, 1.0}) {
        const auto res = pipeline::analyze(
            scenario::hex_uma_scene(500.0, 25.0, 0.0, p, 6.0, 0.5), matching,
            0.10, sir_se::SeUnit::Bits);
        mu_sir.push_back(res.sir.mu_db);
    }
    const bool pass = strictly_decreasing(mean_se) &&
                      strictly_decreasing(outage_se) &&
                      strictly_decreasing(mu_sir);
    report(5, "monotone distance and activity trends", pass,
           fmt("se(225)/se(25) %.3f, mu_sir drop %.2f dB",
               mean_se.back() / mean_se.front(),
               mu_sir.front() - mu_sir.back()));
}

// 6. Cross-cutting numerical properties.
void criterion_6() {
    bool pass = true;
    std::string first_fail;
    auto check = [&](bool ok, const char* what) {
        if (!ok && pass) first_fail = what;
        pass = pass && ok;
    };

    {
        // even-monomial exactness of the order-8 rule
        const auto rule = numerics::gauss_hermite(8);
        double acc = 0.0;
        for (int i = 0; i < rule.order; ++i)
            acc += rule.weights[i] * std::pow(rule.nodes[i], 14.0);
        const double exact = std::sqrt(M_PI) * 135135.0 / 128.0;  // 13!!/2^7
        check(std::abs(acc / exact - 1.0) < 1e-12, "quadrature exactness");
    }
    {
        const double x = 3.7;
        check(std::abs(numerics::digamma(x + 1.0) - numerics::digamma(x) -
                       1.0 / x) < 1e-13,
              "digamma recurrence");
        check(std::abs(numerics::trigamma(x + 1.0) - numerics::trigamma(x) +
                       1.0 / (x * x)) < 1e-13,
              "trigamma recurrence");
    }
    {
        std::mt19937_64 gen(8);
        std::uniform_real_distribution<double> ud;
        numerics::Matrix a(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = ud(gen) - 0.5;
        numerics::Matrix c(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += a(i, k) * a(j, k);
                c(i, j) = s + (i == j ? 2.0 : 0.0);
            }
        const auto l = numerics::cholesky(c);
        double worst = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += l(i, k) * l(j, k);
                worst = std::max(worst, std::abs(s - c(i, j)));
            }
        check(worst < 1e-12, "cholesky reconstruction");
    }
    {
        const auto scene = scenario::hex_uma_scene(500.0, 225.0, 0.0, 0.5, 6.0, 0.5);
        auto model = scenario::build_sum_model(scene).interference;
        // power-normalize so the values sit away from 1 and rounding in the
        // 8^6-term tensor sum cannot mask the trend
        const double top = *std::max_element(model.mu.begin(), model.mu.end());
        for (auto& v : model.mu) v -= top;
        const auto rule = numerics::gauss_hermite(8);
        double prev = 1.0 + 1e-15;
        bool mono = true;
        for (double s = 0.1; s <= 2.01; s += 0.1) {
            const double v = mgf::mgf_sum(s, model, rule);
            mono = mono && v > 0.0 && v < prev;
            prev = v;
        }
        check(mono, "mgf bounds and monotonicity");
    }
    {
        double worst = 0.0;
        for (const double r : {-0.8, -0.2, 0.3, 0.9})
            for (const double s0 : {1.0, 6.0, 11.0}) {
                const double lin = correlation::rho_linear_from_db(r, s0, 8.0);
                worst = std::max(
                    worst, std::abs(
                               correlation::rho_db_from_linear(lin, s0, 8.0).value -
                               r));
            }
        check(worst < 1e-12, "correlation round trip");
    }
    {
        const sir_se::SirDistribution dist{2.0, 6.0};
        const double total = adaptive_simpson(
            [&](double r) { return sir_se::se_pdf(dist, r); }, 1e-12, 30.0,
            1e-13);
        check(std::abs(total - 1.0) < 1e-8, "se density normalization");
    }
    {
        scenario::CorrelatedSumModel m;
        m.mu = {0.0, -4.0, -9.0};
        m.p = {1.0, 0.6, 0.3};
        m.cov = numerics::Matrix(3);
        const double sig[3] = {8.0, 6.0, 10.0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                m.cov(i, j) = (i == j ? 1.0 : 0.4) * sig[i] * sig[j];
        scenario::CorrelatedSumModel perm;
        const int order[3] = {2, 0, 1};
        perm.mu.resize(3);
        perm.p.resize(3);
        perm.cov = numerics::Matrix(3);
        for (int i = 0; i < 3; ++i) {
            perm.mu[i] = m.mu[order[i]];
            perm.p[i] = m.p[order[i]];
            for (int j = 0; j < 3; ++j)
                perm.cov(i, j) = m.cov(order[i], order[j]);
        }
        const mgf::MatchingConfig cfg;
        const auto a = mgf::match_equivalent_lognormal(m, cfg);
        const auto b = mgf::match_equivalent_lognormal(perm, cfg);
        check(std::abs(a.params.mu_db - b.params.mu_db) < 1e-9 &&
                  std::abs(a.params.sigma_db - b.params.sigma_db) < 1e-9,
              "matching permutation invariance");

        scenario::CorrelatedSumModel shifted = m;
        for (auto& v : shifted.mu) v += 17.0;
        const auto c = mgf::match_equivalent_lognormal(shifted, cfg);
        check(std::abs(c.params.mu_db - a.params.mu_db - 17.0) < 1e-9 &&
                  std::abs(c.params.sigma_db - a.params.sigma_db) < 1e-9,
              "matching power-shift invariance");
    }
    {
        const auto scene = scenario::hex_uma_scene(500.0, 100.0, 0.2, 0.5, 6.0, 0.5);
        montecarlo::SimConfig sim;
        sim.n_samples = 20'000;
        sim.seed = 5;
        sim.mode = montecarlo::SimMode::Composite;
        sim.n_threads = 1;
        const auto one = montecarlo::simulate(scene, sim);
        sim.n_threads = 8;
        const auto eight = montecarlo::simulate(scene, sim);
        check(one.sir_db == eight.sir_db, "thread-count determinism");
    }

    report(6, "numerical property suite", pass,
           pass ? "all properties hold" : "first failure: " + first_fail);
}

// 7. Analytical KPIs vs a long full-model simulation.
void criterion_7() {
    const auto scene = scenario::hex_uma_scene(500.0, 25.0, 0.0, 0.5, 6.0, 0.5);
    mgf::MatchingConfig matching;
    matching.quad_order = 16;
    const auto res =
        pipeline::analyze(scene, matching, 0.10, sir_se::SeUnit::Bits);

    montecarlo::SimConfig sim;
    sim.n_samples = 10'000'000;
    sim.seed = 41;
    sim.mode = montecarlo::SimMode::Composite;
    sim.n_threads = 8;
    const auto samples = montecarlo::simulate(scene, sim);
    const auto emp = montecarlo::empirical_cdf(samples);

    double mean = 0.0;
    for (const double v : emp.sorted())
        mean += std::log1p(std::pow(10.0, v / 10.0));
    mean /= std::log(2.0) * static_cast<double>(emp.size());
    const double outage =
        std::log1p(std::pow(10.0, emp.quantile(0.10) / 10.0)) / std::log(2.0);

    const double mean_err = std::abs(res.kpis.mean_se - mean) / mean;
    const double outage_err = std::abs(res.kpis.outage_se - outage) / outage;
    report(7, "analytic KPIs vs 1e7-sample simulation (5%)",
           mean_err < 0.05 && outage_err < 0.05,
           fmt("mean err %.2f%%, outage err %.2f%%", 100.0 * mean_err,
               100.0 * outage_err));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    if (g_failures > 0)
        std::printf("%d criterion(s) failed\n", g_failures);
    else
        std::printf("all criteria passed\n");
    return g_failures;
}
