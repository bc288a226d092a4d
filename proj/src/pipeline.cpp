#include "catsim/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "catsim/io.hpp"
#include "catsim/states.hpp"

namespace catsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAlphaScanLo = 0.05;
constexpr double kAlphaScanHi = 2.5;

DensityMatrix build_input_state(const ExperimentConfig& cfg) {
    const FockDim dim = cfg.mle.dim;
    DensityMatrix rho = [&] {
        switch (cfg.model) {
            case InputModel::model1:
                return mixture_model1(cfg.eta, dim);
            case InputModel::model3:
                return loss_channel(photon_subtracted_sv(cfg.s, dim).to_density_matrix(),
                                    cfg.eta);
            case InputModel::pure_cat:
                return odd_cat(cfg.alpha, dim).to_density_matrix();
            case InputModel::photon_subtracted:
                return photon_subtracted_sv(cfg.s, dim).to_density_matrix();
        }
        throw std::logic_error("unreachable");
    }();
    if (cfg.loss_eta) rho = loss_channel(rho, *cfg.loss_eta);
    if (cfg.dark_count_ratio) {
        const DensityMatrix vacuum =
            PureState(dim, Eigen::VectorXcd::Unit(dim.size(), 0)).to_density_matrix();
        rho = dark_count_mix(rho, vacuum, *cfg.dark_count_ratio);
    }
    return rho;
}

struct ReportMetrics {
    double mean_photon, w00, f_cat, alpha_star;
};

ReportMetrics report_metrics(const DensityMatrix& rho) {
    const CatFit fit = nearest_cat_fidelity(rho, kAlphaScanLo, kAlphaScanHi);
    return {mean_photon(rho), wigner_origin_parity(rho), fit.f_cat, fit.alpha_star};
}

nlohmann::json report_to_json(const ReconstructionReport& report, const ReportMetrics& m) {
    nlohmann::json j = density_matrix_to_json(report.rho);
    j["metrics"] = {{"mean_photon", m.mean_photon}, {"w00", m.w00},
                    {"f_cat", m.f_cat},             {"alpha_star", m.alpha_star},
                    {"iterations", report.iterations}, {"loglik", report.log_likelihood}};
    return j;
}

// Removes everything written so far if the pipeline aborts.
class OutputBundle {
  public:
    explicit OutputBundle(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }
    ~OutputBundle() {
        if (!committed_) {
            std::error_code ec;
            for (const auto& p : written_) std::filesystem::remove(p, ec);
        }
    }
    std::filesystem::path path(const std::string& name) {
        const auto p = dir_ / name;
        written_.push_back(p);
        return p;
    }
    void note_sidecar(const std::string& name) { written_.push_back(dir_ / name); }
    void commit() { committed_ = true; }

  private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> written_;
    bool committed_ = false;
};

}  // namespace

void ExperimentConfig::validate() const {
    if (n_samples < 1000)
        throw std::invalid_argument("ExperimentConfig: n_samples must be >= 1000 "
                                    "when reconstruction is requested");
    if (r < 0) throw std::invalid_argument("ExperimentConfig: r must be >= 0");
    if (alpha <= 0 && model == InputModel::pure_cat)
        throw std::invalid_argument("ExperimentConfig: pure_cat needs alpha > 0");
    if (s <= 0 && (model == InputModel::model3 || model == InputModel::photon_subtracted))
        throw std::invalid_argument("ExperimentConfig: this model needs s > 0");
    if ((eta < 0 || eta > 1) && (model == InputModel::model1 || model == InputModel::model3))
        throw std::invalid_argument("ExperimentConfig: eta must be in [0,1]");
    if (loss_eta && (*loss_eta < 0 || *loss_eta > 1))
        throw std::invalid_argument("ExperimentConfig: loss_eta must be in [0,1]");
    if (dark_count_ratio && *dark_count_ratio < 0)
        throw std::invalid_argument("ExperimentConfig: dark_count_ratio must be >= 0");
    mle.validate();
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;

    const auto& input = j.at("input");
    const std::string model = input.at("model").get<std::string>();
    if (model == "model1")
        cfg.model = InputModel::model1;
    else if (model == "model3")
        cfg.model = InputModel::model3;
    else if (model == "pure_cat")
        cfg.model = InputModel::pure_cat;
    else if (model == "photon_subtracted")
        cfg.model = InputModel::photon_subtracted;
    else
        throw std::invalid_argument("config: unknown input model \"" + model + "\"");
    cfg.alpha = input.value("alpha", cfg.alpha);
    cfg.s = input.value("s", cfg.s);
    cfg.eta = input.value("eta", cfg.eta);
    if (input.contains("loss_eta")) cfg.loss_eta = input.at("loss_eta").get<double>();
    if (input.contains("dark_count_ratio"))
        cfg.dark_count_ratio = input.at("dark_count_ratio").get<double>();

    if (j.contains("teleporter")) {
        const auto& tele = j.at("teleporter");
        cfg.teleporter_enabled = tele.value("enabled", true);
        if (tele.contains("r") && tele.contains("squeezing_db"))
            throw std::invalid_argument("config: give either r or squeezing_db, not both");
        if (tele.contains("r"))
            cfg.r = tele.at("r").get<double>();
        else if (tele.contains("squeezing_db"))
            cfg.r = squeezing_db_to_r(tele.at("squeezing_db").get<double>());
    }

    if (j.contains("sampling")) {
        cfg.n_samples = j.at("sampling").value("n", cfg.n_samples);
        cfg.seed = j.at("sampling").value("seed", cfg.seed);
    }
    if (j.contains("mle")) {
        const auto& m = j.at("mle");
        cfg.mle.dim = FockDim(m.value("n_max", cfg.mle.dim.n_max));
        cfg.mle.max_iters = m.value("max_iters", cfg.mle.max_iters);
        cfg.mle.loglik_tol = m.value("loglik_tol", cfg.mle.loglik_tol);
        cfg.mle.binning.n_theta_bins = m.value("n_theta_bins", cfg.mle.binning.n_theta_bins);
        cfg.mle.binning.n_x_bins = m.value("n_x_bins", cfg.mle.binning.n_x_bins);
        cfg.mle.binning.x_range = m.value("x_range", cfg.mle.binning.x_range);
        cfg.mle.per_sample = m.value("per_sample", cfg.mle.per_sample);
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.grid = PhaseSpaceGrid(g.value("x_min", -5.0), g.value("x_max", 5.0),
                                  g.value("p_min", -5.0), g.value("p_max", 5.0),
                                  g.value("nx", 201), g.value("np", 201));
    }
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    cfg.validate();
    return cfg;
}

PipelineMetrics run_pipeline(const ExperimentConfig& cfg) {
    cfg.validate();
    OutputBundle bundle(cfg.out_dir);

    const DensityMatrix rho_in = build_input_state(cfg);
    const DensityMatrix rho_out = cfg.teleporter_enabled
                                      ? teleport_fock(rho_in, TeleporterParams(cfg.r))
                                      : rho_in;

    QuadratureDataset data_in = sample_quadratures(rho_in, cfg.n_samples, cfg.seed);
    data_in.meta.source = "input";
    QuadratureDataset data_out = sample_quadratures(rho_out, cfg.n_samples, cfg.seed + 1);
    data_out.meta.source = "output";
    write_dataset_csv(bundle.path("dataset_in.csv"), data_in);
    bundle.note_sidecar("dataset_in.csv.meta.json");
    write_dataset_csv(bundle.path("dataset_out.csv"), data_out);
    bundle.note_sidecar("dataset_out.csv.meta.json");

    const ReconstructionReport rec_in = mle_reconstruct(data_in, cfg.mle);
    const ReconstructionReport rec_out = mle_reconstruct(data_out, cfg.mle);
    const ReportMetrics m_in = report_metrics(rec_in.rho);
    const ReportMetrics m_out = report_metrics(rec_out.rho);

    {
        std::ofstream out(bundle.path("rho_in.json"));
        out << report_to_json(rec_in, m_in).dump(2) << "\n";
    }
    {
        std::ofstream out(bundle.path("rho_out.json"));
        out << report_to_json(rec_out, m_out).dump(2) << "\n";
    }

    write_wigner_csv(bundle.path("wigner_in.csv"), wigner_from_rho(rec_in.rho, cfg.grid));
    bundle.note_sidecar("wigner_in.csv.meta.json");
    write_wigner_csv(bundle.path("wigner_out.csv"), wigner_from_rho(rec_out.rho, cfg.grid));
    bundle.note_sidecar("wigner_out.csv.meta.json");

    const PipelineMetrics metrics{m_in.w00,          m_out.w00,         m_in.f_cat,
                                  m_out.f_cat,       m_in.alpha_star,   m_out.alpha_star,
                                  m_in.mean_photon,  m_out.mean_photon,
                                  cfg.teleporter_enabled ? gaussian_fidelity(cfg.r) : 1.0};
    const nlohmann::json mj = {{"w00_in", metrics.w00_in},
                               {"w00_out", metrics.w00_out},
                               {"f_cat_in", metrics.f_cat_in},
                               {"f_cat_out", metrics.f_cat_out},
                               {"alpha_star_in", metrics.alpha_star_in},
                               {"alpha_star_out", metrics.alpha_star_out},
                               {"mean_photon_in", metrics.mean_photon_in},
                               {"mean_photon_out", metrics.mean_photon_out},
                               {"f_tele", metrics.f_tele}};
    {
        std::ofstream out(bundle.path("metrics.json"));
        out << mj.dump(2) << "\n";
    }
    bundle.commit();
    return metrics;
}

namespace {

// Shared fixtures for the regression rows.
struct RegressionContext {
    const double r69 = squeezing_db_to_r(6.9);
    const double eta_fit = (1.0 + 0.171 * kPi) / 2.0;  // model-1 eta from W(0,0) = -0.171
    const PhaseSpaceGrid big{-9.0, 9.0, -9.0, 9.0, 361, 361};

    double convolved_origin(const WignerGrid& w, double r) const {
        return teleport_wigner(w, TeleporterParams(r)).value_at(0.0, 0.0);
    }
};

std::vector<DensityMatrix> factory_states() {
    const FockDim dim{15};
    std::vector<DensityMatrix> states;
    states.push_back(coherent(0.0, dim).to_density_matrix());
    states.push_back(coherent(1.0, dim).to_density_matrix());
    states.push_back(squeezed_vacuum(0.28, dim).to_density_matrix());
    states.push_back(photon_subtracted_sv(0.28, dim).to_density_matrix());
    states.push_back(odd_cat(1.0, dim).to_density_matrix());
    states.push_back(odd_cat(0.81, dim).to_density_matrix());
    states.push_back(mixture_model1(0.77, dim));
    states.push_back(loss_channel(photon_subtracted_sv(0.28, dim).to_density_matrix(), 0.79));
    return states;
}

}  // namespace

std::vector<RegressionRow> reproduce_paper(const std::string& only) {
    const RegressionContext ctx;
    std::vector<RegressionRow> rows;
    const auto want = [&](const std::string& id) { return only.empty() || only == id; };
    const auto approx = [&](std::string id, std::string desc, double computed, double ref,
                            double tol) {
        rows.push_back({std::move(id), std::move(desc), computed, ref, tol,
                        RegressionRow::Kind::approx, std::abs(computed - ref) <= tol});
    };
    const auto at_least = [&](std::string id, std::string desc, double computed, double ref) {
        rows.push_back({std::move(id), std::move(desc), computed, ref, 0.0,
                        RegressionRow::Kind::at_least, computed >= ref});
    };

    if (want("f_tele_r0"))
        approx("f_tele_r0", "teleportation fidelity without entanglement", gaussian_fidelity(0.0),
               0.5, 1e-12);
    if (want("f_tele_6p9db"))
        approx("f_tele_6p9db", "teleportation fidelity at 6.9 dB of squeezing",
               gaussian_fidelity(ctx.r69), 0.83, 1e-3);
    if (want("epr_r_6p9db"))
        approx("epr_r_6p9db", "EPR parameter r from 6.9 dB", ctx.r69, 0.795, 1e-3);
    if (want("added_noise_classical"))
        approx("added_noise_classical", "added noise at r = 0 [dB]", added_noise_db(0.0), 4.77,
               0.01);
    if (want("added_noise_quantum"))
        approx("added_noise_quantum", "added noise at 6.9 dB squeezing [dB]",
               added_noise_db(ctx.r69), 1.49, 0.01);
    if (want("teleported_vacuum_variance")) {
        const FockDim dim{15};
        const DensityMatrix vac = coherent(0.0, dim).to_density_matrix();
        const DensityMatrix out = teleport_fock(vac, TeleporterParams(ctx.r69));
        approx("teleported_vacuum_variance", "teleported vacuum quadrature variance",
               mean_photon(out) + 0.5, 0.5 + std::exp(-2.0 * ctx.r69), 2e-3);
    }
    if (want("spectrum_1mhz"))
        approx("spectrum_1mhz", "quantum teleportation noise at 1 MHz [dB]",
               teleporter_noise_spectrum(SqueezerSpec{}, ChannelResponse{}, 1e6), 1.45, 0.15);
    if (want("w1_output_negativity"))
        approx("w1_output_negativity", "model-1 output W(0,0)",
               output_negativity_model1(ctx.eta_fit, ctx.r69), -0.0207, 5e-4);
    if (want("w1_convolution_consistency")) {
        const WignerGrid w1 = wigner_from_rho(mixture_model1(ctx.eta_fit, FockDim{15}), ctx.big);
        approx("w1_convolution_consistency",
               "model-1 closed form vs numerical convolution",
               ctx.convolved_origin(w1, ctx.r69) - output_negativity_model1(ctx.eta_fit, ctx.r69),
               0.0, 2e-4);
    }
    if (want("w3_output_negativity"))
        approx("w3_output_negativity", "model-3 output W(0,0)",
               output_negativity_model3(0.79, 0.28, ctx.r69), -0.0247, 2e-4);
    if (want("w3_input_negativity"))
        approx("w3_input_negativity", "model-3 input W(0,0) (r -> infinity)",
               output_negativity_model3(0.79, 0.28, 50.0), -0.171, 1e-3);
    if (want("eq9_reduces_to_eq6")) {
        double worst = 0.0;
        for (double eta = 0.1; eta <= 1.0; eta += 0.1)
            for (double r = 0.0; r <= 2.0; r += 0.25)
                worst = std::max(worst, std::abs(output_negativity_model3(eta, 0.0, r) -
                                                 output_negativity_model1(eta, r)));
        approx("eq9_reduces_to_eq6", "model-3 formula at s = 0 equals model-1 formula", worst,
               0.0, 1e-12);
    }
    if (want("no_cloning_inequality")) {
        bool ok = true;
        for (double r : {0.2, 0.3466, 0.5}) {
            const bool negative = output_negativity_model1(1.0, r) < 0.0;
            const bool above_limit = gaussian_fidelity(r) > 2.0 / 3.0;
            ok = ok && (negative == above_limit);
        }
        approx("no_cloning_inequality",
               "one-photon negativity survives iff fidelity exceeds 2/3", ok ? 1.0 : 0.0, 1.0,
               0.0);
    }
    if (want("representation_equivalence")) {
        const FockDim dim{15};
        const TeleporterParams params(ctx.r69);
        double worst = 0.0;
        const auto spread = [&](const DensityMatrix& rho, double closed) {
            const double conv = ctx.convolved_origin(wigner_from_rho(rho, ctx.big), ctx.r69);
            const double fock = wigner_origin_parity(teleport_fock(rho, params));
            const double lo = std::min({closed, conv, fock});
            const double hi = std::max({closed, conv, fock});
            worst = std::max(worst, hi - lo);
        };
        spread(mixture_model1(ctx.eta_fit, dim), output_negativity_model1(ctx.eta_fit, ctx.r69));
        spread(loss_channel(photon_subtracted_sv(0.28, dim).to_density_matrix(), 0.79),
               output_negativity_model3(0.79, 0.28, ctx.r69));
        spread(mixture_model1(1.0, dim), output_negativity_model1(1.0, ctx.r69));
        approx("representation_equivalence",
               "origin negativity across closed form / convolution / Fock channel", worst, 0.0,
               1e-3);
    }
    if (want("parity_identity")) {
        double worst = 0.0;
        for (const auto& rho : factory_states())
            worst = std::max(worst,
                             std::abs(wigner_point(rho, 0.0, 0.0) - wigner_origin_parity(rho)));
        approx("parity_identity", "grid Wigner origin equals parity sum", worst, 0.0, 1e-6);
    }
    if (want("cat_fidelity_lossless")) {
        const CatFit fit = nearest_cat_fidelity(
            photon_subtracted_sv(0.28, FockDim{15}).to_density_matrix(), kAlphaScanLo,
            kAlphaScanHi);
        at_least("cat_fidelity_lossless", "photon-subtracted state vs nearest cat", fit.f_cat,
                 0.99);
    }
    if (want("cat_fidelity_ordering") || want("cat_alpha_ordering")) {
        const FockDim dim{15};
        const DensityMatrix pure = photon_subtracted_sv(0.28, dim).to_density_matrix();
        const DensityMatrix lossy = loss_channel(pure, 0.79);
        const DensityMatrix teleported = teleport_fock(lossy, TeleporterParams(ctx.r69));
        const CatFit f_pure = nearest_cat_fidelity(pure, kAlphaScanLo, kAlphaScanHi);
        const CatFit f_lossy = nearest_cat_fidelity(lossy, kAlphaScanLo, kAlphaScanHi);
        const CatFit f_tel = nearest_cat_fidelity(teleported, kAlphaScanLo, kAlphaScanHi);
        if (want("cat_fidelity_ordering"))
            approx("cat_fidelity_ordering",
                   "F_cat decreases through loss then teleportation",
                   (f_pure.f_cat > f_lossy.f_cat && f_lossy.f_cat > f_tel.f_cat) ? 1.0 : 0.0,
                   1.0, 0.0);
        if (want("cat_alpha_ordering"))
            approx("cat_alpha_ordering", "nearest-cat amplitude shrinks under teleportation",
                   (f_tel.alpha_star < f_lossy.alpha_star) ? 1.0 : 0.0, 1.0, 0.0);
    }
    if (want("usable_bandwidth"))
        at_least("usable_bandwidth", "bandwidth above the no-cloning floor [MHz]",
                 usable_bandwidth(SqueezerSpec{}, ChannelResponse{}, 2.0 / 3.0) / 1e6, 10.0);

    if (rows.empty()) throw std::invalid_argument("reproduce_paper: unknown row id \"" + only + "\"");
    return rows;
}

void write_spectra_csv(const std::filesystem::path& path, const SqueezerSpec& spec,
                       const ChannelResponse& chan, double f_max_hz, int n_points) {
    if (n_points < 2) throw std::invalid_argument("write_spectra_csv: need at least 2 points");
    SqueezerSpec classical = spec;
    classical.low_freq_squeezing_db = 0.0;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "f_hz,quantum_db,classical_db,shot_db\n";
    out.precision(12);
    for (int i = 0; i < n_points; ++i) {
        const double f = f_max_hz * i / (n_points - 1);
        out << f << ',' << teleporter_noise_spectrum(spec, chan, f) << ','
            << teleporter_noise_spectrum(classical, chan, f) << ",0\n";
    }
}

}  // namespace catsim
