#pragma once

#include <ostream>
#include <random>

#include "catsim/fock.hpp"

// Shared fixtures and independent oracles for the test suites. Oracles are
// deliberately written against closed forms, not against the library code
// they check.

namespace catsim::testing {

/// Absolute-tolerance comparator (doctest's Approx is relative only).
struct Within {
    double expected;
    double tol;
};
inline Within within(double expected, double tol) { return {expected, tol}; }
inline bool operator==(double lhs, const Within& rhs) {
    return std::abs(lhs - rhs.expected) <= rhs.tol;
}
inline bool operator==(const Within& lhs, double rhs) { return rhs == lhs; }
inline std::ostream& operator<<(std::ostream& os, const Within& w) {
    return os << w.expected << " +/- " << w.tol;
}

inline PureState random_pure_state(std::mt19937_64& eng, FockDim dim = FockDim{}) {
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd amps(dim.size());
    for (int n = 0; n < dim.size(); ++n) amps(n) = Complex(gauss(eng), gauss(eng));
    return PureState(dim, amps);
}

inline DensityMatrix random_density_matrix(std::mt19937_64& eng, FockDim dim = FockDim{},
                                           int rank = 4) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim.size(), dim.size());
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    double total = 0.0;
    for (int k = 0; k < rank; ++k) {
        const double w = unif(eng);
        const auto psi = random_pure_state(eng, dim).amplitudes();
        rho += w * psi * psi.adjoint();
        total += w;
    }
    return DensityMatrix(dim, rho / total);
}

/// c_n = e^{-|a|^2/2} a^n / sqrt(n!), independent of the states module.
inline Eigen::VectorXcd coherent_amplitudes_oracle(Complex a, int n_max) {
    Eigen::VectorXcd c(n_max + 1);
    c(0) = std::exp(-std::norm(a) / 2.0);
    for (int n = 1; n <= n_max; ++n) c(n) = c(n - 1) * a / std::sqrt(double(n));
    return c;
}

/// c_{2k} = (-tanh s)^k sqrt((2k)!)/(2^k k!) / sqrt(cosh s); infinite-space
/// normalization (sums to slightly under 1 after truncation).
inline Eigen::VectorXcd squeezed_amplitudes_oracle(double s, int n_max) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n_max + 1);
    c(0) = 1.0 / std::sqrt(std::cosh(s));
    for (int k = 1; 2 * k <= n_max; ++k)
        c(2 * k) = c(2 * k - 2) * (-std::tanh(s)) * std::sqrt((2.0 * k - 1.0) / (2.0 * k));
    return c;
}

}  // namespace catsim::testing
