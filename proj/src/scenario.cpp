#include "lnsir/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace lnsir::scenario {

void NetworkScene::validate() const {
    const int k = static_cast<int>(interferers.size());
    if (k < 1)
        throw std::invalid_argument("scene: at least one interferer required");
    if (shadow_correlation < -1.0 || shadow_correlation > 1.0)
        throw std::invalid_argument("scene: shadow_correlation outside [-1,1]");
    // positive definiteness of the equicorrelation matrix over K+1 links
    if (shadow_correlation <= -1.0 / k)
        throw std::invalid_argument(
            "scene: shadow_correlation <= -1/K, correlation matrix not positive definite");
    auto check_link = [&](const LinkModel& l, const char* name) {
        if (!(l.distance_m >= pathloss.d_ref_m))
            throw std::invalid_argument(std::string("scene: ") + name +
                                        " distance below reference distance");
        if (l.activity_p < 0.0 || l.activity_p > 1.0)
            throw std::invalid_argument(std::string("scene: ") + name +
                                        " activity_p outside [0,1]");
        if (!(l.m >= 0.5))
            throw std::invalid_argument(std::string("scene: ") + name +
                                        " Gamma shape m below 0.5");
        if (l.shadow_sigma_db < 0.0)
            throw std::invalid_argument(std::string("scene: ") + name +
                                        " negative shadowing sigma");
    };
    check_link(desired, "desired link");
    for (const auto& l : interferers) check_link(l, "interferer");
}

double path_loss(const PathLossModel& model, double d, bool is_los) {
    if (!(d >= model.d_ref_m))
        throw std::domain_error("path_loss: distance below reference distance");
    const double n = is_los ? model.n_los : model.n_nlos;
    return model.pl_ref_db + 10.0 * n * std::log10(d / model.d_ref_m);
}

NetworkScene hex_uma_scene(double isd_m, double ue_r_m, double ue_theta_rad,
                           double p_default, double shadow_sigma_db,
                           double shadow_corr, const HexUmaOptions& opt) {
    if (!(isd_m > 0.0)) throw std::domain_error("hex_uma_scene: isd_m must be positive");
    if (!(ue_r_m < isd_m / std::sqrt(3.0)))
        throw std::domain_error("hex_uma_scene: UE outside the central cell");
    if (p_default < 0.0 || p_default > 1.0)
        throw std::domain_error("hex_uma_scene: p_default outside [0,1]");

    NetworkScene scene;
    scene.shadow_correlation = shadow_corr;
    scene.pathloss = PathLossModel{opt.pl_ref_db, opt.ple_nlos, opt.ple_nlos,
                                   opt.d_ref_m};

    scene.desired = LinkModel{std::max(ue_r_m, opt.d_ref_m), false,
                              shadow_sigma_db, opt.m, 1.0};

    int nearest = 0;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 6; ++k) {
        const double ang = k * M_PI / 3.0;
        const double d = std::sqrt(ue_r_m * ue_r_m + isd_m * isd_m -
                                   2.0 * ue_r_m * isd_m *
                                       std::cos(ue_theta_rad - ang));
        scene.interferers.push_back(
            LinkModel{d, false, shadow_sigma_db, opt.m, p_default});
        if (d < nearest_d) {
            nearest_d = d;
            nearest = k;
        }
    }
    scene.interferers[nearest].activity_p = 1.0;
    return scene;
}

NetworkScene load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneFileError("cannot open layout file: " + path);

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SceneFileError("layout parse error in " + path + ": " + e.what());
    }

    try {
        const auto& aps = j.at("aps");
        if (!aps.is_array() || aps.size() < 2)
            throw SceneFileError("layout: at least 2 APs required");

        const double ue_x = j.at("ue").at("x_m").get<double>();
        const double ue_y = j.at("ue").at("y_m").get<double>();

        const auto& shadow = j.at("shadow");
        const double sigma_los = shadow.at("sigma_los_db").get<double>();
        const double sigma_nlos = shadow.at("sigma_nlos_db").get<double>();
        const double corr = shadow.at("corr").get<double>();

        const auto& pl = j.at("pathloss");
        PathLossModel model{pl.at("pl_ref_db").get<double>(),
                            pl.at("n_los").get<double>(),
                            pl.at("n_nlos").get<double>(),
                            pl.at("d_ref_m").get<double>()};

        const auto& fad = j.at("fading");
        const double m_los = fad.at("m_los").get<double>();
        const double m_nlos = fad.at("m_nlos").get<double>();
        const bool force_nearest =
            j.value("force_nearest_interferer_active", true);

        struct Ap {
            double x, y, d, p;
            bool los;
        };
        std::vector<Ap> parsed;
        for (const auto& ap : aps) {
            Ap a;
            a.x = ap.at("x_m").get<double>();
            a.y = ap.at("y_m").get<double>();
            a.p = ap.value("p", 1.0);
            a.los = ap.at("los_to_ue").get<bool>();
            if (a.p < 0.0 || a.p > 1.0)
                throw SceneFileError("layout: AP activity p outside [0,1]");
            a.d = std::hypot(a.x - ue_x, a.y - ue_y);
            parsed.push_back(a);
        }
        for (size_t i = 0; i < parsed.size(); ++i)
            for (size_t k = i + 1; k < parsed.size(); ++k)
                if (parsed[i].x == parsed[k].x && parsed[i].y == parsed[k].y)
                    throw SceneFileError("layout: duplicate AP coordinates");

        // nearest-AP association, lowest index on ties
        size_t server = 0;
        for (size_t i = 1; i < parsed.size(); ++i)
            if (parsed[i].d < parsed[server].d) server = i;

        NetworkScene scene;
        scene.shadow_correlation = corr;
        scene.pathloss = model;

        auto to_link = [&](const Ap& a, double p) {
            return LinkModel{a.d, a.los, a.los ? sigma_los : sigma_nlos,
                             a.los ? m_los : m_nlos, p};
        };
        scene.desired = to_link(parsed[server], 1.0);
        int nearest_int = -1;
        double nearest_d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < parsed.size(); ++i) {
            if (i == server) continue;
            scene.interferers.push_back(to_link(parsed[i], parsed[i].p));
            if (parsed[i].d < nearest_d) {
                nearest_d = parsed[i].d;
                nearest_int = static_cast<int>(scene.interferers.size()) - 1;
            }
        }
        if (force_nearest && nearest_int >= 0)
            scene.interferers[nearest_int].activity_p = 1.0;
        return scene;
    } catch (const nlohmann::json::exception& e) {
        throw SceneFileError("layout: missing or malformed field in " + path +
                             ": " + e.what());
    }
}

SumModelBundle build_sum_model(const NetworkScene& scene) {
    scene.validate();
    const int k = static_cast<int>(scene.interferers.size());

    auto reduce = [&](const LinkModel& l) {
        const double loss = path_loss(scene.pathloss, l.distance_m, l.is_los);
        return fading::composite_to_lognormal(
            fading::LognormalParams{-loss, l.shadow_sigma_db},
            fading::GammaFading{l.m});
    };

    SumModelBundle out;
    out.desired = reduce(scene.desired);

    out.interference.mu.resize(k);
    out.interference.p.resize(k);
    out.interference.cov = numerics::Matrix(k);
    std::vector<double> sigma_hat(k);
    for (int i = 0; i < k; ++i) {
        const auto params = reduce(scene.interferers[i]);
        out.interference.mu[i] = params.mu_db;
        sigma_hat[i] = params.sigma_db;
        out.interference.p[i] = scene.interferers[i].activity_p;
    }
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l)
            out.interference.cov(i, l) =
                (i == l ? 1.0 : scene.shadow_correlation) * sigma_hat[i] *
                sigma_hat[l];

    out.rho_pairs.assign(k, scene.shadow_correlation);
    return out;
}

}  // namespace lnsir::scenario
