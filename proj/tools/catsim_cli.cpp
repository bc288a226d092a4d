#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "catsim/io.hpp"
#include "catsim/pipeline.hpp"

// Exit codes: 0 success, 1 validation failure, 2 regression failure.

namespace {

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::string& out_dir) {
    catsim::ExperimentConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "catsim: cannot open config " << config_path << "\n";
            return 1;
        }
        nlohmann::json j;
        in >> j;
        cfg = catsim::ExperimentConfig::from_json(j);
    }
    if (seed) cfg.seed = *seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    const catsim::PipelineMetrics m = catsim::run_pipeline(cfg);
    std::printf("w00_in  = %+.5f   w00_out  = %+.5f\n", m.w00_in, m.w00_out);
    std::printf("f_cat_in = %.4f    f_cat_out = %.4f\n", m.f_cat_in, m.f_cat_out);
    std::printf("<n>_in  = %.4f    <n>_out  = %.4f   f_tele = %.4f\n", m.mean_photon_in,
                m.mean_photon_out, m.f_tele);
    std::printf("bundle written to %s\n", cfg.out_dir.string().c_str());
    return 0;
}

int reproduce_command(const std::string& only) {
    const auto rows = catsim::reproduce_paper(only);
    bool all_pass = true;
    std::printf("%-30s %14s %14s   %s\n", "row", "computed", "reference", "status");
    for (const auto& row : rows) {
        const char* rel = row.kind == catsim::RegressionRow::Kind::at_least ? ">=" : "~";
        std::printf("%-30s %14.6g %3s %10.6g   %s  (%s)\n", row.id.c_str(), row.computed, rel,
                    row.reference, row.pass ? "PASS" : "FAIL", row.description.c_str());
        all_pass = all_pass && row.pass;
    }
    return all_pass ? 0 : 2;
}

int spectra_command(const std::string& out, double db, double fwhm_mhz, double efficiency,
                    double f_max_mhz, int points) {
    catsim::SqueezerSpec spec;
    spec.low_freq_squeezing_db = db;
    spec.cavity_fwhm_hz = fwhm_mhz * 1e6;
    spec.detection_efficiency = efficiency;
    catsim::write_spectra_csv(out, spec, catsim::ChannelResponse{}, f_max_mhz * 1e6, points);
    std::printf("spectrum written to %s\n", out.c_str());
    return 0;
}

int tomography_command(const std::string& data_path, const std::string& out,
                       int n_max, int max_iters, double tol) {
    const catsim::QuadratureDataset ds = catsim::read_dataset_csv(data_path);
    catsim::MleOptions opts;
    opts.dim = catsim::FockDim(n_max);
    opts.max_iters = max_iters;
    opts.loglik_tol = tol;
    const catsim::ReconstructionReport report = catsim::mle_reconstruct(ds, opts);

    nlohmann::json j = catsim::density_matrix_to_json(report.rho);
    const catsim::CatFit fit = catsim::nearest_cat_fidelity(report.rho, 0.05, 2.5);
    j["metrics"] = {{"mean_photon", catsim::mean_photon(report.rho)},
                    {"w00", catsim::wigner_origin_parity(report.rho)},
                    {"f_cat", fit.f_cat},
                    {"alpha_star", fit.alpha_star},
                    {"iterations", report.iterations},
                    {"loglik", report.log_likelihood}};
    std::ofstream os(out);
    if (!os) {
        std::cerr << "catsim: cannot open " << out << " for writing\n";
        return 1;
    }
    os << j.dump(2) << "\n";
    std::printf("reconstructed %zu records: <n> = %.4f, W(0,0) = %+.5f, %d iterations%s\n",
                ds.records.size(), catsim::mean_photon(report.rho),
                catsim::wigner_origin_parity(report.rho), report.iterations,
                report.converged ? "" : " (not converged)");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous-variable cat-state teleportation simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, only, spectra_out = "spectra.csv";
    std::string data_path, tomo_out = "rho.json";
    std::optional<std::uint64_t> seed;
    double db = 6.9, fwhm_mhz = 24.0, efficiency = 1.0, f_max_mhz = 20.0, tol = 1e-9;
    int points = 401, n_max = 15, max_iters = 500;

    auto* run = app.add_subcommand("run", "run the end-to-end experiment pipeline");
    run->add_option("--config", config_path, "JSON config file (defaults mirror the paper)");
    run->add_option("--seed", seed, "override the sampling seed");
    run->add_option("--out", out_dir, "override the output directory");

    auto* repro = app.add_subcommand("reproduce-paper", "closed-form regression table");
    repro->add_option("--only", only, "run a single row by id");

    auto* spectra = app.add_subcommand("spectra", "teleportation noise spectra CSV");
    spectra->add_option("--out", spectra_out, "output CSV path");
    spectra->add_option("--db", db, "low-frequency squeezing in dB");
    spectra->add_option("--fwhm-mhz", fwhm_mhz, "EPR cavity FWHM in MHz");
    spectra->add_option("--efficiency", efficiency, "detection efficiency");
    spectra->add_option("--fmax-mhz", f_max_mhz, "maximum frequency in MHz");
    spectra->add_option("--points", points, "number of frequency points");

    auto* tomo = app.add_subcommand("tomography", "reconstruct a state from a dataset CSV");
    tomo->add_option("--data", data_path, "dataset CSV path")->required();
    tomo->add_option("--out", tomo_out, "output report path");
    tomo->add_option("--n-max", n_max, "Fock cutoff");
    tomo->add_option("--max-iters", max_iters, "iteration cap");
    tomo->add_option("--loglik-tol", tol, "relative log-likelihood stopping tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(config_path, seed, out_dir);
        if (repro->parsed()) return reproduce_command(only);
        if (spectra->parsed())
            return spectra_command(spectra_out, db, fwhm_mhz, efficiency, f_max_mhz, points);
        if (tomo->parsed()) return tomography_command(data_path, tomo_out, n_max, max_iters, tol);
    } catch (const std::exception& e) {
        std::cerr << "catsim: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
