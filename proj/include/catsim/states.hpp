#pragma once

#include "catsim/fock.hpp"

// Factories for the states used across the library, plus the loss and
// dark-count mixing channels.
//
// Squeezing sign convention (important, the opposite one is equally common):
// S(s) = exp[(s/2)(a^2 - a^dag^2)] squeezes x and anti-squeezes p, so the
// x-quadrature variance of S(s)|0> is e^{-2s}/2. Even Fock amplitudes of
// S(s)|0> go as (-tanh s)^k sqrt((2k)!)/(2^k k!).

namespace catsim {

/// Parameter carrier for the cat / photon-subtraction models.
struct CatModelParams {
    double alpha = 0.99;       // cat amplitude, dimensionless quadrature units
    double s = 0.28;           // squeezing parameter
    double eta = 0.79;         // transmittance / mixture weight
    double gamma = 3.8641590e7;  // wave-packet bandwidth, rad/s (12.3 MHz FWHM)

    void validate() const {
        if (alpha < 0) throw std::invalid_argument("CatModelParams: alpha must be >= 0");
        if (s < 0) throw std::invalid_argument("CatModelParams: s must be >= 0");
        if (eta < 0 || eta > 1) throw std::invalid_argument("CatModelParams: eta must be in [0,1]");
    }
};

/// Coherent state, c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
/// Rejects |alpha|^2 > n_max / 3 (truncation safety).
PureState coherent(Complex alpha, FockDim dim = FockDim{});

/// Squeezed vacuum S(s)|0>; even-only Fock support.
PureState squeezed_vacuum(double s, FockDim dim = FockDim{});

/// Normalized a S(s)|0>; odd-only Fock support. Rejects s <= 0.
PureState photon_subtracted_sv(double s, FockDim dim = FockDim{});

/// Odd cat (|alpha> - |-alpha>)/sqrt(N), N = 2(1 - e^{-2 alpha^2}), alpha
/// real > 0. Callers wanting the alpha -> 0 limit use |1> directly.
PureState odd_cat(double alpha, FockDim dim = FockDim{});

/// rho_1 = eta |1><1| + (1 - eta) |0><0|.
DensityMatrix mixture_model1(double eta, FockDim dim = FockDim{});

/// Beam-splitter loss with transmittance eta,
/// K_k = sqrt((1-eta)^k / k!) eta^{n/2} a^k.
DensityMatrix loss_channel(const DensityMatrix& rho, double eta);

/// Convex mixture w*signal + (1-w)*background with w = ratio / (1 + ratio).
DensityMatrix dark_count_mix(const DensityMatrix& signal, const DensityMatrix& background,
                             double event_to_dark_ratio);

}  // namespace catsim
