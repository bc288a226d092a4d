#include "catsim/homodyne.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace catsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCdfTablePoints = 4001;
constexpr double kCdfRange = 6.0;

// Uniform double in [0, 1) from the raw engine output; kept explicit so the
// seed -> dataset mapping does not depend on library distribution internals.
double uniform01(std::mt19937_64& eng) {
    return double(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

Eigen::MatrixXd hermite_functions(int n_max, const Eigen::VectorXd& xs) {
    const int npts = int(xs.size());
    Eigen::MatrixXd psi(n_max + 1, npts);
    psi.row(0) = (-xs.array().square() / 2.0).exp() * std::pow(kPi, -0.25);
    if (n_max >= 1) psi.row(1) = std::sqrt(2.0) * xs.transpose().array() * psi.row(0).array();
    for (int n = 2; n <= n_max; ++n)
        psi.row(n) = std::sqrt(2.0 / n) * xs.transpose().array() * psi.row(n - 1).array() -
                     std::sqrt((n - 1.0) / n) * psi.row(n - 2).array();
    return psi;
}

Eigen::VectorXd quadrature_pdf(const DensityMatrix& rho, double theta,
                               const Eigen::VectorXd& xs) {
    if (!xs.allFinite()) throw std::invalid_argument("quadrature_pdf: non-finite abscissas");
    const int n_max = rho.dim().n_max;
    const Eigen::MatrixXd psi = hermite_functions(n_max, xs);

    // Group by frequency d = n - m: pr = g_0 + 2 Re sum_{d>=1} e^{i d theta} g_d,
    // g_d(x) = sum_m rho(m, m+d) psi_m psi_{m+d}.
    Eigen::VectorXd pdf = Eigen::VectorXd::Zero(xs.size());
    for (int m = 0; m <= n_max; ++m)
        pdf.array() += rho.entry(m, m).real() * psi.row(m).array().square();
    for (int d = 1; d <= n_max; ++d) {
        Eigen::VectorXcd g = Eigen::VectorXcd::Zero(xs.size());
        for (int m = 0; m + d <= n_max; ++m)
            g.array() += rho.entry(m, m + d) *
                         (psi.row(m).array() * psi.row(m + d).array()).cast<Complex>();
        const Complex phase = std::polar(1.0, d * theta);
        pdf.array() += 2.0 * (phase * g.array()).real();
    }
    return pdf;
}

QuadratureDataset sample_quadratures(const DensityMatrix& rho, std::size_t n,
                                     std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_quadratures: n must be >= 1");
    const int n_max = rho.dim().n_max;

    const Eigen::VectorXd xs =
        Eigen::VectorXd::LinSpaced(kCdfTablePoints, -kCdfRange, kCdfRange);
    const double h = xs(1) - xs(0);
    const Eigen::MatrixXd psi = hermite_functions(n_max, xs);

    // Frequency components of the pdf over the table, g_d(x_k).
    Eigen::MatrixXd g_re(n_max + 1, kCdfTablePoints), g_im(n_max + 1, kCdfTablePoints);
    std::vector<int> active;
    for (int d = 0; d <= n_max; ++d) {
        Eigen::VectorXcd g = Eigen::VectorXcd::Zero(kCdfTablePoints);
        for (int m = 0; m + d <= n_max; ++m)
            g.array() += rho.entry(m, m + d) *
                         (psi.row(m).array() * psi.row(m + d).array()).cast<Complex>();
        g_re.row(d) = g.real();
        g_im.row(d) = g.imag();
        if (g_re.row(d).cwiseAbs().maxCoeff() + g_im.row(d).cwiseAbs().maxCoeff() > 1e-15)
            active.push_back(d);
    }

    std::mt19937_64 eng(seed);
    QuadratureDataset ds;
    ds.records.reserve(n);
    ds.meta.seed = seed;
    ds.meta.n = n;

    Eigen::VectorXd pdf(kCdfTablePoints), cdf(kCdfTablePoints);
    for (std::size_t rec = 0; rec < n; ++rec) {
        const double theta = 2.0 * kPi * uniform01(eng);

        pdf.setZero();
        for (int d : active) {
            if (d == 0) {
                pdf += g_re.row(0).transpose();
            } else {
                const double c = 2.0 * std::cos(d * theta), s = 2.0 * std::sin(d * theta);
                pdf.array() += c * g_re.row(d).transpose().array() -
                               s * g_im.row(d).transpose().array();
            }
        }
        pdf = pdf.cwiseMax(0.0);  // clip round-off at pdf nodes

        cdf(0) = 0.0;
        for (int k = 1; k < kCdfTablePoints; ++k)
            cdf(k) = cdf(k - 1) + 0.5 * (pdf(k - 1) + pdf(k)) * h;
        const double total = cdf(kCdfTablePoints - 1);

        const double u = uniform01(eng) * total;
        int lo = 0, hi = kCdfTablePoints - 1;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (cdf(mid) <= u ? lo : hi) = mid;
        }
        const double span = cdf(hi) - cdf(lo);
        const double frac = span > 0 ? (u - cdf(lo)) / span : 0.5;
        ds.records.push_back({theta, xs(lo) + frac * h});
    }
    return ds;
}

ModeQuadrature mode_function_quadrature(const TimeTrace& trace, double gamma) {
    if (gamma <= 0) throw std::invalid_argument("mode_function_quadrature: gamma must be > 0");
    if (trace.samples.empty())
        throw std::invalid_argument("mode_function_quadrature: empty trace");
    if (trace.sample_rate <= 0)
        throw std::invalid_argument("mode_function_quadrature: sample_rate must be > 0");
    if (trace.center_index >= trace.samples.size())
        throw std::invalid_argument("mode_function_quadrature: center_index out of range");

    const double dt = 1.0 / trace.sample_rate;
    const std::size_t n = trace.samples.size();
    double acc = 0.0, f2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (double(i) - double(trace.center_index)) * dt;
        const double f = std::exp(-gamma * std::abs(t));
        acc += f * trace.samples[i] * dt;
        f2 += f * f * dt;
    }
    const double edge = std::min(trace.center_index, n - 1 - trace.center_index) * dt;
    return {acc / std::sqrt(f2), gamma * edge >= 2.0};
}

double gamma_from_fwhm(double fwhm_hz) {
    if (fwhm_hz <= 0) throw std::invalid_argument("gamma_from_fwhm: fwhm must be > 0");
    return kPi * fwhm_hz;
}

}  // namespace catsim
