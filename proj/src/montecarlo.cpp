#include "lnsir/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "lnsir/fading.hpp"
#include "lnsir/rng.hpp"

namespace lnsir::montecarlo {

using fading::kXi;

namespace {

struct LinkDraw {
    double mu_db;      // mean of the dB shadowed power
    double sigma_db;   // shadowing std in the active mode
    double m;          // Gamma shape (composite mode only; inf = none)
    double p;          // activity (interferers)
};

// Per-scene precomputation shared by all samples.
struct SimPlan {
    std::vector<LinkDraw> links;  // index 0 = desired
    numerics::LowerTriangularFactor chol;  // of the (K+1)x(K+1) covariance
    bool zero_cov = false;
    bool composite = false;
};

SimPlan make_plan(const scenario::NetworkScene& scene, SimMode mode) {
    scene.validate();
    SimPlan plan;
    plan.composite = mode == SimMode::Composite;

    auto add_link = [&](const scenario::LinkModel& l, double p) {
        const double loss =
            scenario::path_loss(scene.pathloss, l.distance_m, l.is_los);
        if (plan.composite) {
            plan.links.push_back(LinkDraw{-loss, l.shadow_sigma_db, l.m, p});
        } else {
            const auto red = fading::composite_to_lognormal(
                fading::LognormalParams{-loss, l.shadow_sigma_db},
                fading::GammaFading{l.m});
            plan.links.push_back(LinkDraw{red.mu_db, red.sigma_db,
                                          std::numeric_limits<double>::infinity(),
                                          p});
        }
    };
    add_link(scene.desired, 1.0);
    for (const auto& l : scene.interferers) add_link(l, l.activity_p);

    const int n = static_cast<int>(plan.links.size());
    numerics::Matrix cov(n);
    bool any = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cov(i, j) = (i == j ? 1.0 : scene.shadow_correlation) *
                        plan.links[i].sigma_db * plan.links[j].sigma_db;
            if (cov(i, j) != 0.0) any = true;
        }
    plan.zero_cov = !any;
    if (!plan.zero_cov) plan.chol = numerics::cholesky(cov);
    return plan;
}

// One SIR sample from its dedicated substream. Draw order is fixed:
// shadowing, fading, then activity (redrawn as a block if all-inactive).
double draw_sample(const SimPlan& plan, rng::Rng& gen, SimDiagnostics& diag,
                   bool track) {
    const int n = static_cast<int>(plan.links.size());
    const int k = n - 1;

    // correlated dB shadowed powers
    std::vector<double> x(static_cast<size_t>(n));
    if (plan.zero_cov) {
        for (int i = 0; i < n; ++i) x[i] = plan.links[i].mu_db;
    } else {
        std::vector<double> z(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) z[i] = gen.normal();
        for (int i = 0; i < n; ++i) {
            double v = plan.links[i].mu_db;
            for (int j = 0; j <= i; ++j) v += plan.chol(i, j) * z[j];
            x[i] = v;
        }
    }
    if (track && n >= 2) {
        const double a = x[0] - plan.links[0].mu_db;
        const double b = x[1] - plan.links[1].mu_db;
        diag.sx0 += a;
        diag.sx1 += b;
        diag.sx0x0 += a * a;
        diag.sx1x1 += b * b;
        diag.sx0x1 += a * b;
    }

    std::vector<double> power(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double p_lin = std::pow(10.0, x[i] / 10.0);
        if (plan.composite && std::isfinite(plan.links[i].m)) {
            const double g = gen.gamma(plan.links[i].m) / plan.links[i].m;
            p_lin *= g;
            if (track) {
                diag.gamma_sum += g;
                ++diag.gamma_count;
            }
        }
        power[i] = p_lin;
    }

    // interferer activity, conditioned on a nonempty active set
    std::vector<bool> active(static_cast<size_t>(k));
    bool first_draw = true;
    for (;;) {
        bool any = false;
        for (int i = 0; i < k; ++i) {
            active[i] = gen.bernoulli(plan.links[i + 1].p);
            any = any || active[i];
            if (track && first_draw && active[i]) ++diag.activity_counts[i];
        }
        if (any) break;
        if (track) ++diag.redraws;
        first_draw = false;
    }

    double interference = 0.0;
    for (int i = 0; i < k; ++i)
        if (active[i]) interference += power[i + 1];

    return 10.0 * std::log10(power[0] / interference);
}

}  // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty())
        throw std::domain_error("empirical_cdf: no samples");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) /
           static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::domain_error("quantile: q outside [0,1]");
    const auto n = sorted_.size();
    if (n == 1) return sorted_[0];
    const double pos = q * static_cast<double>(n - 1);
    const auto lo = static_cast<size_t>(pos);
    if (lo + 1 >= n) return sorted_.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted_[lo] + frac * (sorted_[lo + 1] - sorted_[lo]);
}

SampleSet simulate(const scenario::NetworkScene& scene, const SimConfig& cfg) {
    if (cfg.n_samples < 1'000)
        throw std::invalid_argument("simulate: n_samples must be >= 1e3");
    if (std::all_of(scene.interferers.begin(), scene.interferers.end(),
                    [](const scenario::LinkModel& l) { return l.activity_p == 0.0; }))
        throw std::invalid_argument("simulate: all interferers inactive");

    const SimPlan plan = make_plan(scene, cfg.mode);
    const int k = static_cast<int>(scene.interferers.size());

    SampleSet out;
    out.config = cfg;
    out.scene_digest = scene_digest(scene);
    out.sir_db.resize(static_cast<size_t>(cfg.n_samples));
    out.diag.activity_counts.assign(static_cast<size_t>(k), 0);

    const int n_threads = std::max(cfg.n_threads, 1);
    std::vector<SimDiagnostics> per_thread(static_cast<size_t>(n_threads));
    for (auto& d : per_thread)
        d.activity_counts.assign(static_cast<size_t>(k), 0);

    auto worker = [&](int t) {
        const std::int64_t lo = cfg.n_samples * t / n_threads;
        const std::int64_t hi = cfg.n_samples * (t + 1) / n_threads;
        SimDiagnostics& diag = per_thread[static_cast<size_t>(t)];
        for (std::int64_t i = lo; i < hi; ++i) {
            auto gen =
                rng::Rng::substream(cfg.seed, static_cast<std::uint64_t>(i));
            out.sir_db[static_cast<size_t>(i)] =
                draw_sample(plan, gen, diag, true);
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker, t);
        for (auto& th : threads) th.join();
    }

    for (const auto& d : per_thread) {
        for (int i = 0; i < k; ++i)
            out.diag.activity_counts[static_cast<size_t>(i)] +=
                d.activity_counts[static_cast<size_t>(i)];
        out.diag.redraws += d.redraws;
        out.diag.gamma_sum += d.gamma_sum;
        out.diag.gamma_count += d.gamma_count;
        out.diag.sx0 += d.sx0;
        out.diag.sx1 += d.sx1;
        out.diag.sx0x0 += d.sx0x0;
        out.diag.sx1x1 += d.sx1x1;
        out.diag.sx0x1 += d.sx0x1;
    }
    return out;
}

EmpiricalCdf empirical_cdf(const SampleSet& samples) {
    return EmpiricalCdf(samples.sir_db);
}

std::string scene_digest(const scenario::NetworkScene& scene) {
    // FNV-1a over the defining doubles
    std::uint64_t h = 14695981039346656037ULL;
    auto feed = [&](double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    auto feed_link = [&](const scenario::LinkModel& l) {
        feed(l.distance_m);
        feed(l.is_los ? 1.0 : 0.0);
        feed(l.shadow_sigma_db);
        feed(l.m);
        feed(l.activity_p);
    };
    feed_link(scene.desired);
    for (const auto& l : scene.interferers) feed_link(l);
    feed(scene.shadow_correlation);
    feed(scene.pathloss.pl_ref_db);
    feed(scene.pathloss.n_los);
    feed(scene.pathloss.n_nlos);
    feed(scene.pathloss.d_ref_m);

    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

void export_csv(const SampleSet& samples, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_csv: cannot open " + path);
    out << "# scene=" << samples.scene_digest << " seed=" << samples.config.seed
        << " mode=" << (samples.config.mode == SimMode::Composite ? "composite"
                                                                  : "reduced")
        << "\n";
    out << "sir_db\n";
    out.precision(17);
    for (const double v : samples.sir_db) out << v << "\n";
}

}  // namespace lnsir::montecarlo
