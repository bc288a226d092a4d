#include "catsim/states.hpp"

#include <cmath>

namespace catsim {

PureState coherent(Complex alpha, FockDim dim) {
    const double n_bar = std::norm(alpha);
    if (n_bar > dim.n_max / 3.0)
        throw std::invalid_argument("coherent: |alpha|^2 too large for the Fock cutoff");
    Eigen::VectorXcd c(dim.size());
    c(0) = 1.0;
    for (int n = 1; n < dim.size(); ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
    // The e^{-|alpha|^2/2} prefactor is restored by normalization.
    return PureState(dim, std::move(c));
}

PureState squeezed_vacuum(double s, FockDim dim) {
    if (s < 0) throw std::invalid_argument("squeezed_vacuum: s must be >= 0");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim.size());
    const double t = std::tanh(s);
    c(0) = 1.0;
    // c_{2k} / c_{2k-2} = -t sqrt((2k-1)/(2k))
    for (int k = 1; 2 * k < dim.size(); ++k)
        c(2 * k) = c(2 * k - 2) * (-t) * std::sqrt((2.0 * k - 1.0) / (2.0 * k));
    return PureState(dim, std::move(c));
}

PureState photon_subtracted_sv(double s, FockDim dim) {
    if (s <= 0)
        throw std::invalid_argument("photon_subtracted_sv: s must be > 0 "
                                    "(s = 0 annihilates to the zero vector)");
    const Eigen::VectorXcd sv = squeezed_vacuum(s, dim).amplitudes();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim.size());
    for (int n = 1; n < dim.size(); ++n) c(n - 1) = std::sqrt(double(n)) * sv(n);
    return PureState(dim, std::move(c));
}

PureState odd_cat(double alpha, FockDim dim) {
    if (alpha <= 0) throw std::invalid_argument("odd_cat: alpha must be > 0");
    const Eigen::VectorXcd plus = coherent(alpha, dim).amplitudes();
    const Eigen::VectorXcd minus = coherent(-alpha, dim).amplitudes();
    return PureState(dim, plus - minus);
}

DensityMatrix mixture_model1(double eta, FockDim dim) {
    if (eta < 0 || eta > 1) throw std::invalid_argument("mixture_model1: eta must be in [0,1]");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim.size(), dim.size());
    rho(0, 0) = 1.0 - eta;
    rho(1, 1) = eta;
    return DensityMatrix(dim, std::move(rho));
}

DensityMatrix loss_channel(const DensityMatrix& rho, double eta) {
    if (eta < 0 || eta > 1) throw std::invalid_argument("loss_channel: eta must be in [0,1]");
    const FockDim dim = rho.dim();
    const int d = dim.size();
    if (eta == 1.0) return rho;

    // K_k = sqrt((1-eta)^k / k!) eta^{n/2} a^k. The set is exactly trace
    // preserving on the truncated space because a^k only lowers.
    Eigen::VectorXd eta_half_n(d);
    for (int n = 0; n < d; ++n) eta_half_n(n) = std::pow(eta, 0.5 * n);
    const FockOperator a = ladder_operators(dim).annihilation;

    std::vector<FockOperator> kraus;
    kraus.reserve(d);
    FockOperator ak = FockOperator::Identity(d, d);
    double coeff = 1.0;  // sqrt((1-eta)^k / k!)
    for (int k = 0; k < d; ++k) {
        if (k > 0) {
            ak = a * ak;
            coeff *= std::sqrt((1.0 - eta) / k);
        }
        kraus.push_back(coeff * eta_half_n.asDiagonal() * ak);
    }
    return apply_kraus_channel(rho, kraus);
}

DensityMatrix dark_count_mix(const DensityMatrix& signal, const DensityMatrix& background,
                             double event_to_dark_ratio) {
    if (event_to_dark_ratio < 0)
        throw std::invalid_argument("dark_count_mix: ratio must be >= 0");
    if (signal.dim() != background.dim())
        throw std::invalid_argument("dark_count_mix: dimension mismatch");
    const double w = event_to_dark_ratio / (1.0 + event_to_dark_ratio);
    return DensityMatrix(signal.dim(), w * signal.entries() + (1.0 - w) * background.entries());
}

}  // namespace catsim
