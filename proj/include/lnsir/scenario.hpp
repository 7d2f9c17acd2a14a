#ifndef LNSIR_SCENARIO_HPP
#define LNSIR_SCENARIO_HPP

#include <string>
#include <vector>

#include "lnsir/fading.hpp"
#include "lnsir/numerics.hpp"

namespace lnsir::scenario {

/// Log-distance path loss with separate LOS/NLOS exponents:
/// L(d) = pl_ref_db + 10 * n * log10(d / d_ref_m).
struct PathLossModel {
    double pl_ref_db = 30.0;
    double n_los = 2.0;
    double n_nlos = 3.9;
    double d_ref_m = 1.0;
};

/// One AP->UE link.
struct LinkModel {
    double distance_m = 0.0;
    bool is_los = false;
    double shadow_sigma_db = 0.0;
    double m = 1.0;          // Gamma shape; +infinity disables fading
    double activity_p = 1.0; // Bernoulli on-probability (1 for the desired link)
};

/// Desired link plus K interferers with a homogeneous pairwise shadowing
/// correlation across all K+1 links.
struct NetworkScene {
    LinkModel desired;
    std::vector<LinkModel> interferers;
    double shadow_correlation = 0.5;
    PathLossModel pathloss;

    void validate() const;  // throws std::invalid_argument on violation
};

/// Inputs to the MGF-matching step: dB-domain means, covariance and
/// activity probabilities of the K interferer powers.
struct CorrelatedSumModel {
    std::vector<double> mu;    // post-composite means, dB
    numerics::Matrix cov;      // dB^2
    std::vector<double> p;

    int size() const { return static_cast<int>(mu.size()); }
};

/// build_sum_model output: composite-reduced desired link, interference
/// sum model, and the dB-domain desired<->interferer correlations.
struct SumModelBundle {
    fading::LognormalParams desired;
    CorrelatedSumModel interference;
    std::vector<double> rho_pairs;
};

/// Average path loss in dB; throws std::domain_error for d < d_ref.
double path_loss(const PathLossModel& model, double d, bool is_los);

struct HexUmaOptions {
    double ple_nlos = 3.9;
    double pl_ref_db = 30.0;
    double d_ref_m = 1.0;
    double m = 1.0;  // all-NLOS Rayleigh by default
};

/// 7-cell hexagonal UMa layout: serving AP at the origin, six interfering
/// APs on a ring of radius isd_m at multiples of 60 degrees. The nearest
/// interferer is forced to full activity.
NetworkScene hex_uma_scene(double isd_m, double ue_r_m, double ue_theta_rad,
                           double p_default, double shadow_sigma_db,
                           double shadow_corr,
                           const HexUmaOptions& opt = HexUmaOptions{});

struct SceneFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Loads a JSON layout file (see README for the schema). The nearest AP
/// becomes the server (lowest index on ties); the nearest interferer is
/// forced to full activity unless the file sets
/// force_nearest_interferer_active to false.
NetworkScene load_scene_file(const std::string& path);

/// Applies the composite Gamma x lognormal reduction per link and
/// assembles the correlated interference sum model.
SumModelBundle build_sum_model(const NetworkScene& scene);

}  // namespace lnsir::scenario

#endif
