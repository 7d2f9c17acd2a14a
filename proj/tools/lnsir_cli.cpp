// Command-line front end: analytical SIR/SE pipeline, Monte Carlo
// validation, and parameter sweeps over UE distance or interferer activity.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lnsir/metrics.hpp"
#include "lnsir/montecarlo.hpp"
#include "lnsir/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace lnsir;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitGate = 3;

struct HexUmaScene {
    double isd_m = 500.0;
    double ue_r_m = 25.0;
    double ue_theta_rad = 0.0;
    double p_default = 0.5;
    double shadow_sigma_db = 6.0;
    double shadow_corr = 0.5;
    scenario::HexUmaOptions opt;
};

struct RunConfig {
    std::optional<HexUmaScene> hex;     // builtin scene
    std::optional<std::string> layout; // or a layout file
    mgf::MatchingConfig matching;
    montecarlo::SimConfig sim;
    double alpha = 0.10;
    sir_se::SeUnit unit = sir_se::SeUnit::Bits;
    double ksd_gate = 0.03;
    double debug_mu_offset_db = 0.0;  // fault injection for validate
    std::string out_dir = ".";
};

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }

    RunConfig cfg;
    const auto& scene = j.at("scene");
    const std::string type = scene.at("type").get<std::string>();
    if (type == "hex-uma") {
        HexUmaScene hex;
        hex.isd_m = scene.value("isd_m", 500.0);
        if (scene.contains("ue")) {
            hex.ue_r_m = scene["ue"].value("r_m", 25.0);
            hex.ue_theta_rad = scene["ue"].value("theta_rad", 0.0);
        }
        hex.p_default = scene.value("p_default", 0.5);
        hex.shadow_sigma_db = scene.value("shadow_sigma_db", 6.0);
        hex.shadow_corr = scene.value("shadow_corr", 0.5);
        hex.opt.ple_nlos = scene.value("ple_nlos", 3.9);
        hex.opt.pl_ref_db = scene.value("pl_ref_db", 30.0);
        hex.opt.d_ref_m = scene.value("d_ref_m", 1.0);
        hex.opt.m = scene.value("m", 1.0);
        cfg.hex = hex;
    } else if (type == "file") {
        cfg.layout = scene.at("path").get<std::string>();
        if (!fs::exists(*cfg.layout))
            throw std::invalid_argument("layout file does not exist: " + *cfg.layout);
    } else {
        throw std::invalid_argument("scene.type must be 'hex-uma' or 'file'");
    }

    if (j.contains("matching")) {
        const auto& m = j["matching"];
        cfg.matching.quad_order = m.value("quad_order", 8);
        if (m.contains("s_points")) {
            cfg.matching.s1 = m["s_points"].at(0).get<double>();
            cfg.matching.s2 = m["s_points"].at(1).get<double>();
        }
        cfg.matching.residual_tol = m.value("residual_tol", 1e-12);
        cfg.matching.max_terms = m.value("max_terms", std::int64_t{100'000'000});
        cfg.matching.mc_fallback_samples =
            m.value("mc_fallback_samples", std::int64_t{1'000'000});
        cfg.matching.seed = m.value("seed", std::uint64_t{12345});
    }
    if (j.contains("sim")) {
        const auto& s = j["sim"];
        cfg.sim.n_samples = s.value("n_samples", std::int64_t{1'000'000});
        cfg.sim.seed = s.value("seed", std::uint64_t{1});
        const std::string mode = s.value("mode", "reduced");
        if (mode == "composite")
            cfg.sim.mode = montecarlo::SimMode::Composite;
        else if (mode == "reduced")
            cfg.sim.mode = montecarlo::SimMode::Reduced;
        else
            throw std::invalid_argument("sim.mode must be composite or reduced");
        cfg.sim.n_threads = s.value("threads", 1);
    }
    cfg.alpha = j.value("alpha", 0.10);
    const std::string unit = j.value("se_unit", "bits");
    if (unit == "bits")
        cfg.unit = sir_se::SeUnit::Bits;
    else if (unit == "nats")
        cfg.unit = sir_se::SeUnit::Nats;
    else
        throw std::invalid_argument("se_unit must be bits or nats");
    cfg.ksd_gate = j.value("ksd_gate", 0.03);
    return cfg;
}

scenario::NetworkScene make_scene(const RunConfig& cfg) {
    if (cfg.hex)
        return scenario::hex_uma_scene(cfg.hex->isd_m, cfg.hex->ue_r_m,
                                       cfg.hex->ue_theta_rad, cfg.hex->p_default,
                                       cfg.hex->shadow_sigma_db,
                                       cfg.hex->shadow_corr, cfg.hex->opt);
    return scenario::load_scene_file(*cfg.layout);
}

void write_json(const ordered_json& j, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

ordered_json analysis_to_json(const pipeline::AnalysisResult& r,
                              const RunConfig& cfg) {
    ordered_json j;
    j["equivalent"] = {
        {"mu_x_db", r.equivalent.params.mu_db},
        {"sigma_x_db", r.equivalent.params.sigma_db},
        {"residual_s1", r.equivalent.residual_s1},
        {"residual_s2", r.equivalent.residual_s2},
        {"method", r.equivalent.method == mgf::MatchMethod::TensorQuadrature
                       ? "tensor-quadrature"
                       : "mc-expectation"}};
    j["correlation"] = {{"rho_linear", r.rho_linear},
                        {"rho_db", r.rho_db},
                        {"clamped", r.rho_clamped}};
    j["sir"] = {{"mu_db", r.sir.mu_db},
                {"sigma_db", r.sir.sigma_db},
                {"point_mass", r.point_mass}};
    j["se"] = {{"mean", r.kpis.mean_se},
               {"outage", r.kpis.outage_se},
               {"alpha", r.kpis.alpha},
               {"unit", cfg.unit == sir_se::SeUnit::Bits ? "bits" : "nats"}};
    return j;
}

// 2001-point CDF grids over mu +/- 5 sigma of the dB-domain SIR.
void write_cdf_curves(const pipeline::AnalysisResult& r, const fs::path& dir,
                      const RunConfig& cfg) {
    const double span = r.sir.sigma_db > 0.0 ? 5.0 * r.sir.sigma_db : 5.0;
    const double lo = r.sir.mu_db - span;
    const double hi = r.sir.mu_db + span;
    const int points = 2001;
    const double scale =
        cfg.unit == sir_se::SeUnit::Bits ? 1.0 / std::log(2.0) : 1.0;

    std::ofstream sir_out(dir / "sir_cdf.csv");
    std::ofstream se_out(dir / "se_cdf.csv");
    sir_out << "sir_db,cdf\n";
    se_out << "se,cdf\n";
    sir_out.precision(12);
    se_out.precision(12);
    for (int i = 0; i < points; ++i) {
        const double g_db = lo + (hi - lo) * i / (points - 1);
        const double cdf =
            r.sir.sigma_db > 0.0
                ? sir_se::sir_cdf(r.sir, std::pow(10.0, g_db / 10.0))
                : (g_db >= r.sir.mu_db ? 1.0 : 0.0);
        sir_out << g_db << "," << cdf << "\n";
        const double se = std::log1p(std::pow(10.0, g_db / 10.0)) * scale;
        se_out << se << "," << cdf << "\n";
    }
}

int cmd_analyze(const RunConfig& cfg) {
    const auto scene = make_scene(cfg);
    const auto result = pipeline::analyze(scene, cfg.matching, cfg.alpha, cfg.unit);
    fs::create_directories(cfg.out_dir);
    write_json(analysis_to_json(result, cfg), fs::path(cfg.out_dir) / "analysis.json");
    write_cdf_curves(result, cfg.out_dir, cfg);
    std::cout << "analyze: mu_sir=" << result.sir.mu_db
              << " dB, sigma_sir=" << result.sir.sigma_db
              << " dB, mean_se=" << result.kpis.mean_se
              << ", outage_se=" << result.kpis.outage_se << "\n";
    return kExitOk;
}

int cmd_validate(const RunConfig& cfg) {
    const auto scene = make_scene(cfg);
    auto result = pipeline::analyze(scene, cfg.matching, cfg.alpha, cfg.unit);
    result.sir.mu_db += cfg.debug_mu_offset_db;

    const auto samples = montecarlo::simulate(scene, cfg.sim);
    const auto emp = montecarlo::empirical_cdf(samples);

    const auto sir = result.sir;
    auto cdf = [&](double x_db) {
        return sir.sigma_db > 0.0
                   ? numerics::normal_cdf((x_db - sir.mu_db) / sir.sigma_db)
                   : (x_db >= sir.mu_db ? 1.0 : 0.0);
    };
    auto pdf = [&](double x_db) {
        const double z = (x_db - sir.mu_db) / sir.sigma_db;
        return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * M_PI) * sir.sigma_db);
    };
    const auto fit = metrics::fit_report(emp, cdf, pdf);

    fs::create_directories(cfg.out_dir);
    ordered_json j;
    j["analysis"] = analysis_to_json(result, cfg);
    j["fit"] = {{"kld", fit.kld},
                {"ksd", fit.ksd},
                {"bins", fit.bins},
                {"support", {fit.support_lo, fit.support_hi}},
                {"q_floor_hit", fit.q_floor_hit}};
    j["sim"] = {{"n_samples", samples.config.n_samples},
                {"seed", samples.config.seed},
                {"mode", samples.config.mode == montecarlo::SimMode::Composite
                             ? "composite"
                             : "reduced"},
                {"redraws", samples.diag.redraws},
                {"scene_digest", samples.scene_digest}};
    j["gate"] = {{"ksd_max", cfg.ksd_gate}, {"pass", fit.ksd <= cfg.ksd_gate}};
    write_json(j, fs::path(cfg.out_dir) / "validation.json");

    // overlay: empirical vs analytic CDF on the sample quantile grid
    std::ofstream overlay(fs::path(cfg.out_dir) / "overlay.csv");
    overlay << "sir_db,empirical_cdf,analytic_cdf\n";
    overlay.precision(12);
    const int points = 501;
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double q = (i + 0.5) / points;
        const double x = emp.quantile(q);
        if (x <= prev) continue;  // keep the abscissa strictly increasing
        prev = x;
        overlay << x << "," << emp(x) << "," << cdf(x) << "\n";
    }

    std::cout << "validate: ksd=" << fit.ksd << " kld=" << fit.kld
              << " gate=" << cfg.ksd_gate
              << (fit.ksd <= cfg.ksd_gate ? " PASS" : " FAIL") << "\n";
    return fit.ksd <= cfg.ksd_gate ? kExitOk : kExitGate;
}

int cmd_sweep(const RunConfig& cfg, const std::string& axis,
              const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("sweep: no values given");
    if (axis != "ue_distance" && axis != "activity")
        throw std::invalid_argument("sweep: axis must be ue_distance or activity");
    if (!cfg.hex)
        throw std::invalid_argument("sweep: requires the builtin hex-uma scene");

    fs::create_directories(cfg.out_dir);
    std::ofstream out(fs::path(cfg.out_dir) / "sweep.csv");
    out << axis << ",mu_sir_db,sigma_sir_db,mean_se,outage_se\n";
    out.precision(12);

    std::vector<double> sorted_values = values;
    std::sort(sorted_values.begin(), sorted_values.end());
    sorted_values.erase(
        std::unique(sorted_values.begin(), sorted_values.end()),
        sorted_values.end());

    std::vector<double> mean_se, outage_se, mu_sir;
    for (const double v : sorted_values) {
        HexUmaScene hex = *cfg.hex;
        if (axis == "ue_distance")
            hex.ue_r_m = v;
        else
            hex.p_default = v;
        const auto scene = scenario::hex_uma_scene(
            hex.isd_m, hex.ue_r_m, hex.ue_theta_rad, hex.p_default,
            hex.shadow_sigma_db, hex.shadow_corr, hex.opt);
        const auto r = pipeline::analyze(scene, cfg.matching, cfg.alpha, cfg.unit);
        out << v << "," << r.sir.mu_db << "," << r.sir.sigma_db << ","
            << r.kpis.mean_se << "," << r.kpis.outage_se << "\n";
        mean_se.push_back(r.kpis.mean_se);
        outage_se.push_back(r.kpis.outage_se);
        mu_sir.push_back(r.sir.mu_db);
    }

    auto strictly = [](const std::vector<double>& v, bool decreasing) {
        for (size_t i = 1; i < v.size(); ++i)
            if (decreasing ? v[i] >= v[i - 1] : v[i] <= v[i - 1]) return false;
        return true;
    };
    ordered_json trend;
    if (axis == "ue_distance") {
        trend["mean_se_strictly_decreasing"] = strictly(mean_se, true);
        trend["outage_se_strictly_decreasing"] = strictly(outage_se, true);
    } else {
        trend["mean_sir_strictly_decreasing"] = strictly(mu_sir, true);
        trend["mean_se_strictly_decreasing"] = strictly(mean_se, true);
    }
    write_json(trend, fs::path(cfg.out_dir) / "sweep_trends.json");
    std::cout << "sweep: " << sorted_values.size() << " points, trends "
              << trend.dump() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Downlink SIR and spectral-efficiency analysis for "
                 "interference-limited networks with correlated "
                 "Gamma-lognormal links"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::optional<int> quad_order;
    std::optional<double> alpha;
    std::optional<std::string> unit;
    std::optional<std::string> mode;
    double debug_mu_offset = 0.0;
    std::string axis = "ue_distance";
    std::vector<double> values;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON run configuration")
            ->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "override simulation seed");
        cmd->add_option("--samples", samples, "override Monte Carlo sample count");
        cmd->add_option("--quad-order", quad_order, "override Gauss-Hermite order");
        cmd->add_option("--alpha", alpha, "outage percentile in (0,1)");
        cmd->add_option("--unit", unit, "SE unit: bits|nats");
        cmd->add_option("--mode", mode, "simulation mode: composite|reduced");
    };

    auto* analyze = app.add_subcommand("analyze", "analytical pipeline only");
    add_common(analyze);
    auto* validate =
        app.add_subcommand("validate", "analytical pipeline vs Monte Carlo");
    add_common(validate);
    validate->add_option("--debug-mu-offset-db", debug_mu_offset,
                         "inject an offset into the analytical SIR mean");
    auto* sweep = app.add_subcommand("sweep", "KPI sweep over one axis");
    add_common(sweep);
    sweep->add_option("--axis", axis, "ue_distance|activity");
    sweep->add_option("--values", values, "axis values")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        cfg.out_dir = out_dir;
        if (seed) cfg.sim.seed = *seed;
        if (samples) cfg.sim.n_samples = *samples;
        if (quad_order) cfg.matching.quad_order = *quad_order;
        if (alpha) cfg.alpha = *alpha;
        if (unit) {
            if (*unit == "bits")
                cfg.unit = sir_se::SeUnit::Bits;
            else if (*unit == "nats")
                cfg.unit = sir_se::SeUnit::Nats;
            else
                throw std::invalid_argument("--unit must be bits or nats");
        }
        if (mode) {
            if (*mode == "composite")
                cfg.sim.mode = montecarlo::SimMode::Composite;
            else if (*mode == "reduced")
                cfg.sim.mode = montecarlo::SimMode::Reduced;
            else
                throw std::invalid_argument("--mode must be composite or reduced");
        }
        cfg.debug_mu_offset_db = debug_mu_offset;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (validate->parsed()) return cmd_validate(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg, axis, values);
    } catch (const scenario::SceneFileError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}
