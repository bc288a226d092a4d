#include "catsim/teleport.hpp"

#include <cmath>
#include <numbers>

namespace catsim {

namespace {
constexpr double kPi = std::numbers::pi;

struct GaussHermiteRule {
    Eigen::VectorXd nodes;    // roots of H_n
    Eigen::VectorXd weights;  // sum to sqrt(pi)
};

// Golub-Welsch on the Jacobi matrix for weight e^{-t^2}.
GaussHermiteRule gauss_hermite(int n) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    GaussHermiteRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights = std::sqrt(kPi) * es.eigenvectors().row(0).transpose().array().square();
    return rule;
}

}  // namespace

double squeezing_db_to_r(double db) {
    if (db < 0) throw std::invalid_argument("squeezing_db_to_r: db must be >= 0");
    return db * std::numbers::ln10 / 20.0;
}

double gaussian_fidelity(double r) {
    if (r < 0) throw std::invalid_argument("gaussian_fidelity: r must be >= 0");
    return 1.0 / (1.0 + std::exp(-2.0 * r));
}

double added_noise_db(double r) {
    if (r < 0) throw std::invalid_argument("added_noise_db: r must be >= 0");
    return 10.0 * std::log10(1.0 + 2.0 * std::exp(-2.0 * r));
}

WignerGrid teleport_wigner(const WignerGrid& w, const TeleporterParams& params) {
    return gauss_convolve(w, std::exp(-params.r));
}

DensityMatrix teleport_fock(const DensityMatrix& rho, const TeleporterParams& params,
                            int n_quad) {
    if (n_quad < 15) throw std::invalid_argument("teleport_fock: n_quad must be >= 15");
    const int d = rho.dim().size();
    const double sigma = std::exp(-params.r);
    const GaussHermiteRule rule = gauss_hermite(n_quad);
    const FockOperator a = ladder_operators(rho.dim()).annihilation;
    const FockOperator a_dag = a.adjoint();

    // A displacement by (dx, dp) in phase space is D(beta) with
    // beta = (dx + i dp)/sqrt(2); averaging over dx, dp ~ N(0, sigma^2) with
    // Gauss-Hermite nodes t gives beta = sigma (t_i + i t_j), weight w_i w_j / pi.
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    double weight_sum = 0.0;
    for (int i = 0; i < n_quad; ++i) {
        for (int j = 0; j < n_quad; ++j) {
            const Complex beta = sigma * Complex(rule.nodes(i), rule.nodes(j));
            const double w = rule.weights(i) * rule.weights(j) / kPi;
            const FockOperator disp = operator_exponential(beta * a_dag - std::conj(beta) * a);
            out += w * (disp * rho.entries() * disp.adjoint());
            weight_sum += w;
        }
    }
    out /= weight_sum;
    const double trace_dev = std::abs(out.trace().real() - 1.0);
    if (trace_dev > 1e-3)
        throw std::runtime_error("teleport_fock: displacement quadrature check failed "
                                 "(trace deviation " + std::to_string(trace_dev) + ")");
    out = 0.5 * (out + out.adjoint().eval());
    return DensityMatrix(rho.dim(), out / out.trace().real());
}

double output_negativity_model1(double eta, double r) {
    if (eta < 0 || eta > 1) throw std::invalid_argument("output_negativity_model1: bad eta");
    if (r < 0) throw std::invalid_argument("output_negativity_model1: r must be >= 0");
    const double s2 = std::exp(-2.0 * r);
    return (1.0 - 2.0 * eta + 2.0 * s2) / (kPi * (1.0 + 2.0 * s2) * (1.0 + 2.0 * s2));
}

double output_negativity_model3(double eta, double s, double r) {
    if (eta <= 0 || eta > 1) throw std::invalid_argument("output_negativity_model3: bad eta");
    if (s < 0 || r < 0) throw std::invalid_argument("output_negativity_model3: bad s or r");
    const double g = 1.0 + 2.0 * std::exp(-2.0 * r);
    const double sh = std::sinh(s);
    const double denom = g * g + 4.0 * eta * (g - eta) * sh * sh;
    return g * (g - 2.0 * eta) / (kPi * std::pow(denom, 1.5));
}

}  // namespace catsim
