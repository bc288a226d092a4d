// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Monte-Carlo criteria use frozen seeds; tolerances are pinned in
// the checks themselves.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "catsim/io.hpp"
#include "catsim/pipeline.hpp"
#include "catsim/states.hpp"
#include "catsim/teleport.hpp"
#include "catsim/tomography.hpp"
#include "catsim/wigner.hpp"

using namespace catsim;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

struct Criterion {
    int number;
    std::string label;
    std::vector<std::string> details;
    bool ok = true;

    Criterion(int n, std::string text) : number(n), label(std::move(text)) {}
    void expect(bool condition, const std::string& what) {
        ok = ok && condition;
        details.push_back(std::string(condition ? "ok  " : "BAD ") + what);
    }
    ~Criterion() {
        std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", number, label.c_str());
        for (const auto& d : details) std::printf("        %s\n", d.c_str());
        if (!ok) ++g_failures;
    }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// Uhlmann fidelity between mixed states; lives in test code only, the
// library ships just the pure-vs-mixed form.
double uhlmann_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(a.entries());
    const Eigen::MatrixXcd sqrt_a = ea.eigenvectors() *
                                    ea.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                                    ea.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> em(sqrt_a * b.entries() * sqrt_a);
    const double root_sum = em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return root_sum * root_sum;
}

const double kR69 = squeezing_db_to_r(6.9);
const PhaseSpaceGrid kBig(-9.0, 9.0, -9.0, 9.0, 361, 361);

DensityMatrix model3_state() {
    return loss_channel(photon_subtracted_sv(0.28, FockDim{15}).to_density_matrix(), 0.79);
}

void criterion_1() {
    Criterion c(1, "Gaussian teleportation fidelity");
    c.expect(gaussian_fidelity(0.0) == 0.5, "gaussian_fidelity(0) = 0.5 exactly");
    const double f = gaussian_fidelity(kR69);
    c.expect(std::abs(f - 0.830) <= 1e-3, fmt("fidelity at 6.9 dB: %.6f = 0.830 +/- 0.001", f));
}

void criterion_2() {
    Criterion c(2, "added-noise endpoints and 1 MHz spectrum");
    const double classical = added_noise_db(0.0);
    c.expect(std::abs(classical - 4.77) <= 0.01,
             fmt("added noise at r = 0: %.4f dB = 4.77 +/- 0.01", classical));
    const double quantum = added_noise_db(0.7944);
    c.expect(std::abs(quantum - 1.49) <= 0.01,
             fmt("added noise at r = 0.7944: %.4f dB = 1.49 +/- 0.01", quantum));
    const double at_1mhz = teleporter_noise_spectrum(SqueezerSpec{}, ChannelResponse{}, 1e6);
    c.expect(at_1mhz >= 1.3 && at_1mhz <= 1.6,
             fmt("spectrum at 1 MHz: %.4f dB in [1.3, 1.6]", at_1mhz));
}

void criterion_3() {
    Criterion c(3, "model-3 closed form");
    const double out = output_negativity_model3(0.79, 0.28, 0.7944);
    c.expect(std::abs(out - (-0.0247)) <= 2e-4,
             fmt("W3_out(0,0): %.6f = -0.0247 +/- 0.0002", out));
    const double in = output_negativity_model3(0.79, 0.28, 50.0);
    c.expect(std::abs(in - (-0.171)) <= 1e-3,
             fmt("r -> infinity limit: %.6f = -0.171 +/- 0.001", in));
}

void criterion_4() {
    Criterion c(4, "model-1 convolution consistency");
    const double eta_fit = (1.0 + 0.171 * kPi) / 2.0;
    const double closed = output_negativity_model1(eta_fit, kR69);
    const WignerGrid w1 = wigner_from_rho(mixture_model1(eta_fit, FockDim{15}), kBig);
    const double conv = teleport_wigner(w1, TeleporterParams(kR69)).value_at(0.0, 0.0);
    c.expect(std::abs(conv - (-0.0208)) <= 5e-4,
             fmt("convolved origin: %.6f = -0.0208 +/- 0.0005", conv));
    c.expect(std::abs(conv - closed) <= 2e-4,
             fmt("closed form %.6f matches convolution %.6f", closed, conv));
    c.expect(std::abs(-0.0207 - conv) <= 5e-4, "paper value -0.0207 lies within tolerance");
    double worst = 0.0;
    for (double eta = 0.05; eta <= 1.0; eta += 0.05)
        for (double r = 0.0; r <= 3.0; r += 0.2)
            worst = std::max(worst, std::abs(output_negativity_model3(eta, 0.0, r) -
                                             output_negativity_model1(eta, r)));
    c.expect(worst <= 1e-12, fmt("model-3 formula at s = 0 equals model-1 to %.1e", worst));
}

void criterion_5() {
    Criterion c(5, "representation equivalence of the channel");
    const FockDim dim{15};
    const TeleporterParams params(kR69);
    const double eta_fit = (1.0 + 0.171 * kPi) / 2.0;
    struct Case {
        const char* name;
        DensityMatrix rho;
        double closed;
    };
    const std::vector<Case> cases = {
        {"model-1", mixture_model1(eta_fit, dim), output_negativity_model1(eta_fit, kR69)},
        {"model-3", model3_state(), output_negativity_model3(0.79, 0.28, kR69)},
        {"one-photon", mixture_model1(1.0, dim), output_negativity_model1(1.0, kR69)},
    };
    for (const auto& k : cases) {
        const double conv =
            teleport_wigner(wigner_from_rho(k.rho, kBig), params).value_at(0.0, 0.0);
        const double fock = wigner_origin_parity(teleport_fock(k.rho, params));
        const double spread =
            std::max({k.closed, conv, fock}) - std::min({k.closed, conv, fock});
        c.expect(spread <= 1e-3,
                 fmt((std::string(k.name) + ": closed %.6f conv %.6f fock spread %.2e").c_str(),
                     k.closed, conv, spread));
    }
}

void criterion_6() {
    Criterion c(6, "no-cloning threshold");
    for (double r : {0.2, 0.3466, 0.5}) {
        const bool negative = output_negativity_model1(1.0, r) < 0.0;
        const bool above_limit = gaussian_fidelity(r) > 2.0 / 3.0;
        c.expect(negative == above_limit,
                 fmt("r = %.4f: negativity %.2e, fidelity %.6f", r,
                     output_negativity_model1(1.0, r), gaussian_fidelity(r)));
    }
    // Grid-convolution confirmation away from the knife edge.
    const DensityMatrix one = mixture_model1(1.0, FockDim{15});
    const WignerGrid w = wigner_from_rho(one, kBig);
    const double below = teleport_wigner(w, TeleporterParams(0.2)).value_at(0.0, 0.0);
    const double above = teleport_wigner(w, TeleporterParams(0.5)).value_at(0.0, 0.0);
    c.expect(below > 0.0 && above < 0.0,
             fmt("convolution route signs: %.5f at r = 0.2, %.5f at r = 0.5", below, above));
}

void criterion_7() {
    Criterion c(7, "tomography round trip at the paper's sample count");
    const DensityMatrix truth = model3_state();
    const QuadratureDataset data = sample_quadratures(truth, 200000, 1);
    const ReconstructionReport report = mle_reconstruct(data, MleOptions{});

    const double w00 = wigner_origin_parity(report.rho);
    c.expect(std::abs(w00 - (-0.171)) <= 0.01,
             fmt("reconstructed W(0,0): %.5f = -0.171 +/- 0.01", w00));

    // 3 sigma band from a five-seed study of this reconstruction (sd 0.0013).
    const double n_hat = mean_photon(report.rho);
    c.expect(std::abs(n_hat - mean_photon(truth)) <= 3.0 * 0.0013,
             fmt("<n>: %.5f vs model %.5f within 3 MC sigma", n_hat, mean_photon(truth)));

    const double fid = uhlmann_fidelity(truth, report.rho);
    c.expect(fid >= 0.99, fmt("reconstruction fidelity %.5f >= 0.99", fid));
    c.expect(report.loglik_monotone,
             fmt("log-likelihood non-decreasing (worst step %.2e)",
                 report.min_loglik_increment));
}

void criterion_8() {
    Criterion c(8, "cat approximation survives qualitatively");
    const FockDim dim{15};
    const DensityMatrix pure = photon_subtracted_sv(0.28, dim).to_density_matrix();
    const DensityMatrix lossy = model3_state();
    const DensityMatrix teleported = teleport_fock(lossy, TeleporterParams(kR69));

    const CatFit f_pure = nearest_cat_fidelity(pure, 0.05, 2.5);
    const CatFit f_lossy = nearest_cat_fidelity(lossy, 0.05, 2.5);
    const CatFit f_tel = nearest_cat_fidelity(teleported, 0.05, 2.5);

    c.expect(f_pure.f_cat >= 0.99, fmt("lossless F_cat %.5f >= 0.99", f_pure.f_cat));
    c.expect(f_lossy.f_cat < f_pure.f_cat,
             fmt("loss lowers F_cat: %.4f -> %.4f", f_pure.f_cat, f_lossy.f_cat));
    c.expect(f_tel.f_cat < f_lossy.f_cat,
             fmt("teleportation lowers F_cat further: %.4f -> %.4f", f_lossy.f_cat,
                 f_tel.f_cat));
    c.expect(f_tel.alpha_star < f_lossy.alpha_star,
             fmt("nearest-cat amplitude shrinks: alpha*^2 %.4f -> %.4f",
                 f_lossy.alpha_star * f_lossy.alpha_star,
                 f_tel.alpha_star * f_tel.alpha_star));
    c.details.push_back(
        fmt("   model values for comparison with the experiment's 0.750 -> 0.46 and "
            "|alpha|^2 0.98 -> 0.66: F %.3f -> %.3f",
            f_lossy.f_cat, f_tel.f_cat));
}

void criterion_9() {
    Criterion c(9, "parity identity at the origin");
    const FockDim dim{15};
    const std::vector<std::pair<const char*, DensityMatrix>> states = {
        {"vacuum", coherent(0.0, dim).to_density_matrix()},
        {"coherent(1)", coherent(1.0, dim).to_density_matrix()},
        {"squeezed_vacuum(0.28)", squeezed_vacuum(0.28, dim).to_density_matrix()},
        {"photon_subtracted(0.28)", photon_subtracted_sv(0.28, dim).to_density_matrix()},
        {"odd_cat(1.0)", odd_cat(1.0, dim).to_density_matrix()},
        {"odd_cat(0.81)", odd_cat(0.81, dim).to_density_matrix()},
        {"mixture_model1(0.77)", mixture_model1(0.77, dim)},
        {"model3(0.28, 0.79)", model3_state()},
    };
    const PhaseSpaceGrid grid = PhaseSpaceGrid::default_grid();
    double worst = 0.0;
    for (const auto& [name, rho] : states) {
        const double grid_origin = wigner_from_rho(rho, grid).value_at(0.0, 0.0);
        worst = std::max(worst, std::abs(grid_origin - wigner_origin_parity(rho)));
    }
    c.expect(worst <= 1e-6, fmt("max |grid origin - parity sum| = %.2e <= 1e-6", worst));
}

void criterion_10() {
    Criterion c(10, "temporal mode function contract");
    const double rate = 1e9, gamma = gamma_from_fwhm(12.3e6), dt = 1.0 / rate;

    std::mt19937_64 eng(2);
    std::normal_distribution<double> noise(0.0, std::sqrt(rate));
    double sum2 = 0.0;
    const int n_traces = 10000;
    TimeTrace trace{std::vector<double>(500), rate, 250};
    for (int t = 0; t < n_traces; ++t) {
        for (auto& v : trace.samples) v = noise(eng);
        const double x = mode_function_quadrature(trace, gamma).value;
        sum2 += x * x;
    }
    const double variance = sum2 / n_traces;
    c.expect(std::abs(variance - 1.0) <= 0.05,
             fmt("white-noise output variance %.4f = 1.00 +/- 0.05", variance));

    double inside = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double f = std::exp(-gamma * std::abs((i - 250.0) * dt));
        inside += f * f * dt;
    }
    const double fraction = inside * gamma;  // analytic total energy is 1/gamma
    c.expect(fraction >= 0.99, fmt("mode energy inside the window: %.4f >= 0.99", fraction));
}

void criterion_11() {
    Criterion c(11, "usable bandwidth above the no-cloning floor");
    const double bw = usable_bandwidth(SqueezerSpec{}, ChannelResponse{}, 2.0 / 3.0);
    c.expect(bw >= 10e6, fmt("bandwidth %.2f MHz >= 10 MHz", bw / 1e6));
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
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    else std::printf("all 11 acceptance criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
