#include "lnsir/mgf.hpp"

#include <algorithm>
#include <cmath>

#include "lnsir/rng.hpp"

namespace lnsir::mgf {

using fading::kXi;
using fading::LognormalParams;
using numerics::Matrix;
using numerics::QuadratureRule;

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;

// The finite-order tensor approximation depends on the Cholesky
// orientation, so interferers are brought into a canonical order first;
// this makes mgf_sum and mgf_sum_mc exactly permutation invariant.
scenario::CorrelatedSumModel canonicalize(const scenario::CorrelatedSumModel& m) {
    const int k = m.size();
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (m.mu[a] != m.mu[b]) return m.mu[a] > m.mu[b];
        if (m.cov(a, a) != m.cov(b, b)) return m.cov(a, a) > m.cov(b, b);
        return m.p[a] > m.p[b];
    });
    scenario::CorrelatedSumModel out;
    out.mu.resize(static_cast<size_t>(k));
    out.p.resize(static_cast<size_t>(k));
    out.cov = Matrix(k);
    for (int i = 0; i < k; ++i) {
        out.mu[i] = m.mu[idx[i]];
        out.p[i] = m.p[idx[i]];
        for (int j = 0; j < k; ++j) out.cov(i, j) = m.cov(idx[i], idx[j]);
    }
    return out;
}

bool is_zero_covariance(const Matrix& cov) {
    for (int i = 0; i < cov.dim(); ++i)
        for (int j = 0; j < cov.dim(); ++j)
            if (cov(i, j) != 0.0) return false;
    return true;
}

// Bernoulli-gated factor for interferer k at dB-domain power x_k.
inline double gated_factor(double s, double p, double x_db) {
    return 1.0 - p + p * std::exp(-s * std::exp(x_db / kXi));
}

// Depth-first traversal of the N^K tensor grid. The covariance factor is
// lower triangular, so row k's exponent is fixed once nodes 0..k are chosen.
struct TensorSum {
    double s;
    const scenario::CorrelatedSumModel* model;
    const QuadratureRule* rule;
    const Matrix* factor;  // Cholesky of cov
    std::vector<double> chosen;  // selected abscissas per level
    double total = 0.0;

    void descend(int depth, double partial) {
        const int k = model->size();
        const int n = rule->order;
        for (int i = 0; i < n; ++i) {
            chosen[depth] = rule->nodes[i];
            double row = 0.0;
            for (int l = 0; l <= depth; ++l)
                row += (*factor)(depth, l) * chosen[l];
            const double x_db = kSqrt2 * row + model->mu[depth];
            const double term = partial * (rule->weights[i] / kSqrtPi) *
                                gated_factor(s, model->p[depth], x_db);
            if (depth + 1 == k)
                total += term;
            else
                descend(depth + 1, term);
        }
    }
};

}  // namespace

double mgf_sum(double s, const CorrelatedSumModel& model,
               const QuadratureRule& rule, std::int64_t max_terms) {
    if (!(s > 0.0)) throw std::domain_error("mgf_sum: s must be positive");
    const int k = model.size();
    if (k < 1) throw std::invalid_argument("mgf_sum: empty model");

    if (std::all_of(model.p.begin(), model.p.end(),
                    [](double p) { return p == 0.0; }))
        return 1.0;  // empty sum

    if (is_zero_covariance(model.cov)) {
        // degenerate deterministic powers
        double prod = 1.0;
        for (int i = 0; i < k; ++i)
            prod *= gated_factor(s, model.p[i], model.mu[i]);
        return prod;
    }

    double terms = 1.0;
    for (int i = 0; i < k; ++i) {
        terms *= rule.order;
        if (terms > static_cast<double>(max_terms))
            throw CapacityError(
                "mgf_sum: tensor grid exceeds max_terms; use the Monte Carlo "
                "expectation instead");
    }

    const auto canon = canonicalize(model);
    const auto chol = numerics::cholesky(canon.cov);
    TensorSum sum{s, &canon, &rule, &chol.factor,
                  std::vector<double>(static_cast<size_t>(k), 0.0)};
    sum.descend(0, 1.0);
    return sum.total;
}

double mgf_sum_mc(double s, const CorrelatedSumModel& model,
                  std::int64_t samples, std::uint64_t seed) {
    if (samples < 10'000)
        throw std::invalid_argument("mgf_sum_mc: at least 1e4 samples required");
    const int k = model.size();

    const auto canon = canonicalize(model);
    const bool deterministic = is_zero_covariance(canon.cov);
    numerics::LowerTriangularFactor chol;
    if (!deterministic) chol = numerics::cholesky(canon.cov);

    std::vector<double> z(static_cast<size_t>(k));
    double acc = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        auto gen = rng::Rng::substream(seed, static_cast<std::uint64_t>(i));
        double prod = 1.0;
        if (deterministic) {
            for (int j = 0; j < k; ++j)
                prod *= gated_factor(s, canon.p[j], canon.mu[j]);
        } else {
            for (int j = 0; j < k; ++j) z[j] = gen.normal();
            for (int j = 0; j < k; ++j) {
                double x = canon.mu[j];
                for (int l = 0; l <= j; ++l) x += chol(j, l) * z[l];
                prod *= gated_factor(s, canon.p[j], x);
            }
        }
        acc += prod;
    }
    return acc / static_cast<double>(samples);
}

double mgf_single(double s, const LognormalParams& params,
                  const QuadratureRule& rule) {
    if (!(s > 0.0)) throw std::domain_error("mgf_single: s must be positive");
    if (params.sigma_db == 0.0)
        return std::exp(-s * std::pow(10.0, params.mu_db / 10.0));
    double acc = 0.0;
    for (int n = 0; n < rule.order; ++n) {
        const double x_db = kSqrt2 * params.sigma_db * rule.nodes[n] + params.mu_db;
        acc += (rule.weights[n] / kSqrtPi) * std::exp(-s * std::exp(x_db / kXi));
    }
    return acc;
}

LognormalParams fenton_wilkinson_init(const CorrelatedSumModel& model) {
    const int k = model.size();
    // first, second and cross moments of the (ungated) joint lognormal
    std::vector<double> m1(static_cast<size_t>(k));
    std::vector<double> m2(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double mu = model.mu[i] / kXi;
        const double var = model.cov(i, i) / (kXi * kXi);
        m1[i] = std::exp(mu + 0.5 * var);
        m2[i] = std::exp(2.0 * mu + 2.0 * var);
    }
    double mean = 0.0;
    double var = 0.0;
    for (int i = 0; i < k; ++i) {
        const double pm = model.p[i] * m1[i];
        mean += pm;
        var += model.p[i] * m2[i] - pm * pm;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            const double cross = std::exp(
                (model.mu[i] + model.mu[j]) / kXi +
                (model.cov(i, i) + model.cov(j, j) + 2.0 * model.cov(i, j)) /
                    (2.0 * kXi * kXi));
            var += model.p[i] * model.p[j] * (cross - m1[i] * m1[j]);
        }
    }
    var = std::max(var, 0.0);
    const double ratio = 1.0 + var / (mean * mean);
    return LognormalParams{kXi * (std::log(mean) - 0.5 * std::log(ratio)),
                           kXi * std::sqrt(std::log(ratio))};
}

EquivalentLognormal match_equivalent_lognormal(const CorrelatedSumModel& model,
                                               const MatchingConfig& cfg) {
    const int k = model.size();
    if (k < 1) throw std::invalid_argument("match: empty model");
    if (cfg.quad_order < 2)
        throw std::invalid_argument("match: quad_order must be >= 2");
    if (!(cfg.s1 > 0.0 && cfg.s2 > 0.0 && cfg.s1 != cfg.s2))
        throw std::invalid_argument("match: s-points must be positive and distinct");
    if (std::all_of(model.p.begin(), model.p.end(),
                    [](double p) { return p == 0.0; }))
        throw DegenerateModelError(
            "match: all interferers inactive, SIR undefined in the "
            "interference-limited model");

    // normalize powers so that max mu_k = 0 dB; the fixed s-points then sit
    // where the MGFs carry curvature. Exact by the lognormal scaling property.
    const double shift = -*std::max_element(model.mu.begin(), model.mu.end());
    CorrelatedSumModel norm = model;
    for (auto& m : norm.mu) m += shift;

    const auto rule = numerics::gauss_hermite(cfg.quad_order);

    double grid = 1.0;
    for (int i = 0; i < k; ++i) grid *= cfg.quad_order;
    const bool tensor = grid <= static_cast<double>(cfg.max_terms);

    auto rhs = [&](double s) {
        return tensor ? mgf_sum(s, norm, rule, cfg.max_terms)
                      : mgf_sum_mc(s, norm, cfg.mc_fallback_samples, cfg.seed);
    };
    const double rhs1 = rhs(cfg.s1);
    const double rhs2 = rhs(cfg.s2);

    const LognormalParams init = fenton_wilkinson_init(norm);

    EquivalentLognormal out;
    out.method = tensor ? MatchMethod::TensorQuadrature : MatchMethod::McExpectation;

    if (init.sigma_db < 1e-9) {
        // deterministic sum (all sigma = 0, all p = 1): exact point mass
        out.params = LognormalParams{init.mu_db - shift, 0.0};
        out.residual_s1 = mgf_single(cfg.s1, init, rule) - rhs1;
        out.residual_s2 = mgf_single(cfg.s2, init, rule) - rhs2;
        return out;
    }

    // solve in (mu_X, ln sigma_X) to keep sigma positive
    auto residual = [&](double mu, double t) {
        const LognormalParams p{mu, std::exp(t)};
        return std::array<double, 2>{mgf_single(cfg.s1, p, rule) - rhs1,
                                     mgf_single(cfg.s2, p, rule) - rhs2};
    };
    const auto sol = numerics::solve_2d(residual, init.mu_db,
                                        std::log(init.sigma_db),
                                        cfg.residual_tol);

    out.params = LognormalParams{sol.u - shift, std::exp(sol.v)};
    out.residual_s1 = sol.residual[0];
    out.residual_s2 = sol.residual[1];
    return out;
}

}  // namespace lnsir::mgf
