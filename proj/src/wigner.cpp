#include "catsim/wigner.hpp"

#include <cmath>
#include <numbers>

namespace catsim {

namespace {

constexpr double kPi = std::numbers::pi;

// (-1)^n sqrt(n! / (n+d)!) for the Laguerre kernel.
Eigen::MatrixXd kernel_coefficients(int size) {
    Eigen::MatrixXd c(size, size);  // c(d, n), d + n < size
    for (int d = 0; d < size; ++d) {
        for (int n = 0; n + d < size; ++n) {
            double ratio = 1.0;
            for (int j = n + 1; j <= n + d; ++j) ratio /= j;
            c(d, n) = ((n % 2) ? -1.0 : 1.0) * std::sqrt(ratio);
        }
    }
    return c;
}

// W(x,p) = (1/pi) e^{-x^2-p^2} [S_0 + 2 Re sum_d z^d S_d],
// S_d = sum_n rho(n+d, n) c(d, n) L_n^d(2(x^2+p^2)), z = sqrt(2)(x - i p).
double wigner_point_impl(const Eigen::MatrixXcd& rho, const Eigen::MatrixXd& coeff,
                         double x, double p) {
    const int size = int(rho.rows());
    const double r2 = 2.0 * (x * x + p * p);
    const Complex z = std::sqrt(2.0) * Complex(x, -p);

    double total = 0.0;
    Complex zd = 1.0;  // z^d
    for (int d = 0; d < size; ++d) {
        // Generalized Laguerre recurrence L_n^d along the d-th diagonal.
        Complex s_d = 0.0;
        double lnm2 = 0.0, lnm1 = 0.0;
        for (int n = 0; n + d < size; ++n) {
            double ln;
            if (n == 0)
                ln = 1.0;
            else if (n == 1)
                ln = 1.0 + d - r2;
            else
                ln = ((2.0 * n - 1.0 + d - r2) * lnm1 - (n - 1.0 + d) * lnm2) / n;
            lnm2 = lnm1;
            lnm1 = ln;
            s_d += rho(n + d, n) * (coeff(d, n) * ln);
        }
        total += (d == 0) ? s_d.real() : 2.0 * (zd * s_d).real();
        zd *= z;
    }
    return std::exp(-(x * x + p * p)) / kPi * total;
}

}  // namespace

PhaseSpaceGrid::PhaseSpaceGrid(double x_lo, double x_hi, double p_lo, double p_hi, int n_x,
                               int n_p)
    : x_min(x_lo), x_max(x_hi), p_min(p_lo), p_max(p_hi), nx(n_x), np(n_p) {
    if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(p_min) &&
          std::isfinite(p_max)))
        throw std::invalid_argument("PhaseSpaceGrid: bounds must be finite");
    if (!(x_min < x_max && p_min < p_max))
        throw std::invalid_argument("PhaseSpaceGrid: bounds must be ordered");
    if (nx < 3 || np < 3) throw std::invalid_argument("PhaseSpaceGrid: need at least 3 points");
}

bool PhaseSpaceGrid::same_as(const PhaseSpaceGrid& o) const {
    const double tol = 1e-12;
    return nx == o.nx && np == o.np && std::abs(x_min - o.x_min) < tol &&
           std::abs(x_max - o.x_max) < tol && std::abs(p_min - o.p_min) < tol &&
           std::abs(p_max - o.p_max) < tol;
}

double WignerGrid::value_at(double x, double p) const {
    const double fx = (x - grid.x_min) / grid.dx();
    const double fp = (p - grid.p_min) / grid.dp();
    if (fx < 0 || fp < 0 || fx > grid.nx - 1 || fp > grid.np - 1) return 0.0;
    const int i = std::min(int(fx), grid.nx - 2);
    const int j = std::min(int(fp), grid.np - 2);
    const double tx = fx - i, tp = fp - j;
    return (1 - tx) * (1 - tp) * values(i, j) + tx * (1 - tp) * values(i + 1, j) +
           (1 - tx) * tp * values(i, j + 1) + tx * tp * values(i + 1, j + 1);
}

double wigner_point(const DensityMatrix& rho, double x, double p) {
    const Eigen::MatrixXd coeff = kernel_coefficients(rho.dim().size());
    return wigner_point_impl(rho.entries(), coeff, x, p);
}

WignerGrid wigner_from_rho(const DensityMatrix& rho, const PhaseSpaceGrid& grid) {
    const Eigen::MatrixXd coeff = kernel_coefficients(rho.dim().size());
    WignerGrid w{grid, Eigen::MatrixXd(grid.nx, grid.np)};
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.np; ++j)
            w.values(i, j) = wigner_point_impl(rho.entries(), coeff, grid.x(i), grid.p(j));
    const double norm = w.integral();
    if (std::abs(norm - 1.0) > 0.01)
        throw std::runtime_error("wigner_from_rho: grid too small for state (normalization " +
                                 std::to_string(norm) + ")");
    return w;
}

double wigner_origin_parity(const DensityMatrix& rho) {
    double sum = 0.0;
    for (int n = 0; n < rho.dim().size(); ++n)
        sum += ((n % 2) ? -1.0 : 1.0) * rho.entry(n, n).real();
    return sum / kPi;
}

WignerGrid cat_wigner_analytic(double alpha, const PhaseSpaceGrid& grid) {
    if (alpha <= 0) throw std::invalid_argument("cat_wigner_analytic: alpha must be > 0");
    const double norm = 2.0 * (1.0 - std::exp(-2.0 * alpha * alpha));
    const double a = std::sqrt(2.0) * alpha;
    WignerGrid w{grid, Eigen::MatrixXd(grid.nx, grid.np)};
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        for (int j = 0; j < grid.np; ++j) {
            const double p = grid.p(j);
            // e^{-x^2-p^2} e^{-2a^2} cosh(2 sqrt(2) a x) written as two
            // displaced Gaussians to avoid cosh overflow.
            const double lobes = 0.5 * (std::exp(-(x - a) * (x - a) - p * p) +
                                        std::exp(-(x + a) * (x + a) - p * p));
            const double fringe = std::exp(-x * x - p * p) * std::cos(2.0 * a * p);
            w.values(i, j) = 2.0 / (norm * kPi) * (lobes - fringe);
        }
    }
    return w;
}

WignerGrid model2_wigner(double s, const PhaseSpaceGrid& grid) {
    if (s < 0) throw std::invalid_argument("model2_wigner: s must be >= 0");
    const double e2s = std::exp(2.0 * s), em2s = std::exp(-2.0 * s);
    WignerGrid w{grid, Eigen::MatrixXd(grid.nx, grid.np)};
    for (int i = 0; i < grid.nx; ++i) {
        const double x2 = e2s * grid.x(i) * grid.x(i);
        for (int j = 0; j < grid.np; ++j) {
            const double p2 = em2s * grid.p(j) * grid.p(j);
            w.values(i, j) = 2.0 / kPi * (x2 + p2 - 0.5) * std::exp(-x2 - p2);
        }
    }
    return w;
}

namespace {

// Separable convolution pass along one axis; kernel weights sum to 1.
Eigen::MatrixXd convolve_axis(const Eigen::MatrixXd& in, double step, double sigma, bool along_x) {
    const int radius = int(std::ceil(6.0 * sigma / step));
    Eigen::VectorXd k(2 * radius + 1);
    for (int m = -radius; m <= radius; ++m)
        k(m + radius) = std::exp(-0.5 * (m * step) * (m * step) / (sigma * sigma));
    k /= k.sum();

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(in.rows(), in.cols());
    if (along_x) {
        for (int i = 0; i < in.rows(); ++i) {
            const int m_lo = std::max(-radius, i - int(in.rows()) + 1);
            const int m_hi = std::min(radius, i);
            for (int j = 0; j < in.cols(); ++j) {
                double acc = 0.0;
                for (int m = m_lo; m <= m_hi; ++m) acc += k(m + radius) * in(i - m, j);
                out(i, j) = acc;
            }
        }
    } else {
        for (int j = 0; j < in.cols(); ++j) {
            const int m_lo = std::max(-radius, j - int(in.cols()) + 1);
            const int m_hi = std::min(radius, j);
            for (int i = 0; i < in.rows(); ++i) {
                double acc = 0.0;
                for (int m = m_lo; m <= m_hi; ++m) acc += k(m + radius) * in(i, j - m);
                out(i, j) = acc;
            }
        }
    }
    return out;
}

}  // namespace

WignerGrid gauss_convolve(const WignerGrid& w, double sigma) {
    if (sigma < 0) throw std::invalid_argument("gauss_convolve: sigma must be >= 0");
    if (sigma == 0.0) return w;
    WignerGrid out{w.grid, convolve_axis(convolve_axis(w.values, w.grid.dx(), sigma, true),
                                         w.grid.dp(), sigma, false)};
    const double in_norm = w.integral();
    if (std::abs(out.integral() - in_norm) > 1e-4 * std::max(1.0, std::abs(in_norm)))
        throw std::runtime_error(
            "gauss_convolve: grid margin insufficient, normalization not preserved");
    return out;
}

WignerGrid model3_wigner(double s, double eta, const PhaseSpaceGrid& grid) {
    if (eta <= 0 || eta > 1) throw std::invalid_argument("model3_wigner: eta must be in (0,1]");
    if (eta == 1.0) return model2_wigner(s, grid);
    const double lambda = std::sqrt((1.0 - eta) / (2.0 * eta));
    const double root_eta = std::sqrt(eta);

    // Internal grid: requested nodes divided by sqrt(eta) plus convolution
    // padding, so resampling lands exactly on internal nodes.
    const double hx = grid.dx() / root_eta, hp = grid.dp() / root_eta;
    const int pad_x = int(std::ceil(6.0 * lambda / hx)) + 1;
    const int pad_p = int(std::ceil(6.0 * lambda / hp)) + 1;
    const PhaseSpaceGrid inner(grid.x_min / root_eta - pad_x * hx,
                               grid.x_max / root_eta + pad_x * hx,
                               grid.p_min / root_eta - pad_p * hp,
                               grid.p_max / root_eta + pad_p * hp,
                               grid.nx + 2 * pad_x, grid.np + 2 * pad_p);
    const WignerGrid blurred = gauss_convolve(model2_wigner(s, inner), lambda);
    WignerGrid out{grid, blurred.values.block(pad_x, pad_p, grid.nx, grid.np) / eta};
    return out;
}

double overlap_fidelity(const WignerGrid& w1, const WignerGrid& w2) {
    if (!w1.grid.same_as(w2.grid))
        throw std::invalid_argument("overlap_fidelity: grids do not match");
    const double f =
        2.0 * kPi * w1.values.cwiseProduct(w2.values).sum() * w1.grid.dx() * w1.grid.dp();
    return std::clamp(f, 0.0, 1.0 + 1e-3);
}

MarginalDistribution marginal(const WignerGrid& w, double theta) {
    const auto& g = w.grid;
    const double half_diag = std::hypot(std::max(std::abs(g.x_min), std::abs(g.x_max)),
                                        std::max(std::abs(g.p_min), std::abs(g.p_max)));
    const double hy = std::min(g.dx(), g.dp());
    const int ny = int(std::ceil(half_diag / hy));
    const double c = std::cos(theta), s = std::sin(theta);

    MarginalDistribution m;
    m.x = Eigen::VectorXd(g.nx);
    m.pdf = Eigen::VectorXd(g.nx);
    for (int i = 0; i < g.nx; ++i) {
        const double xi = g.x(i);
        double acc = 0.0;
        for (int iy = -ny; iy <= ny; ++iy) {
            const double y = iy * hy;
            acc += w.value_at(xi * c - y * s, xi * s + y * c);
        }
        m.x(i) = xi;
        m.pdf(i) = acc * hy;
    }
    return m;
}

}  // namespace catsim
