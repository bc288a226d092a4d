#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "catsim/spectra.hpp"
#include "catsim/teleport.hpp"
#include "catsim/tomography.hpp"
#include "catsim/wigner.hpp"

// End-to-end experiment runner (state -> teleport -> sample -> reconstruct
// -> metrics) and the closed-form regression table.

namespace catsim {

enum class InputModel { model1, model3, pure_cat, photon_subtracted };

struct ExperimentConfig {
    InputModel model = InputModel::model3;
    double alpha = 0.99;  // pure_cat amplitude
    double s = 0.28;      // squeezing (model3, photon_subtracted)
    double eta = 0.79;    // transmittance / mixture weight (model1, model3)
    std::optional<double> loss_eta;           // extra loss applied to the input
    std::optional<double> dark_count_ratio;   // optional dark-count mixing

    bool teleporter_enabled = true;
    double r = 0.794392;  // EPR parameter; defaults to 6.9 dB of squeezing

    std::size_t n_samples = 200000;
    std::uint64_t seed = 1;

    MleOptions mle;
    PhaseSpaceGrid grid = PhaseSpaceGrid::default_grid();
    std::filesystem::path out_dir = "out";

    void validate() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct PipelineMetrics {
    double w00_in, w00_out;
    double f_cat_in, f_cat_out;
    double alpha_star_in, alpha_star_out;
    double mean_photon_in, mean_photon_out;
    double f_tele;
};

/// Runs the full simulation and writes the output bundle (metrics.json,
/// wigner_in/out.csv, dataset_in/out.csv, rho_in/out.json) into
/// config.out_dir. Partial outputs are removed on error.
PipelineMetrics run_pipeline(const ExperimentConfig& config);

struct RegressionRow {
    enum class Kind { approx, at_least };
    std::string id;
    std::string description;
    double computed;
    double reference;
    double tolerance;  // half-width for approx, unused for at_least
    Kind kind;
    bool pass;
};

/// Evaluates every closed-form regression anchor (no Monte Carlo). With a
/// non-empty `only`, runs just that row; unknown ids are rejected.
std::vector<RegressionRow> reproduce_paper(const std::string& only = "");

/// Three-curve spectrum file "f_hz,quantum_db,classical_db,shot_db".
void write_spectra_csv(const std::filesystem::path& path, const SqueezerSpec& spec,
                       const ChannelResponse& chan, double f_max_hz, int n_points);

}  // namespace catsim
