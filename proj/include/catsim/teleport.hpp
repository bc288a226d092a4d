#pragma once

#include "catsim/fock.hpp"
#include "catsim/wigner.hpp"

// The unity-gain teleportation channel in both representations: phase-space
// convolution with a Gaussian of standard deviation e^{-r} per quadrature,
// and its Fock-space realization as a displacement-averaged Kraus integral.

namespace catsim {

struct TeleporterParams {
    double r = 0.0;  // EPR correlation parameter

    explicit TeleporterParams(double r_value) : r(r_value) {
        if (!(r >= 0)) throw std::invalid_argument("TeleporterParams: r must be >= 0");
    }
    double noise_variance() const { return std::exp(-2.0 * r); }  // e^{-2r}, per quadrature
    double g_r() const { return 1.0 + 2.0 * noise_variance(); }
};

/// r with e^{-2r} = 10^{-db/10}, i.e. r = db ln(10) / 20.
double squeezing_db_to_r(double db);

/// Gaussian-state teleportation fidelity 1 / (1 + e^{-2r}).
double gaussian_fidelity(double r);

/// Added noise of the teleported vacuum relative to shot noise:
/// 10 log10(1 + 2 e^{-2r}) dB, from the output variance 1/2 + e^{-2r}.
double added_noise_db(double r);

/// W_out = W_in convolved with G_{e^{-r}}.
WignerGrid teleport_wigner(const WignerGrid& w, const TeleporterParams& params);

/// Fock-space channel: Gaussian displacement average on an n_quad x n_quad
/// Gauss-Hermite grid, rho_out = sum_ij w_ij D(beta_ij) rho D(beta_ij)^dag.
DensityMatrix teleport_fock(const DensityMatrix& rho, const TeleporterParams& params,
                            int n_quad = 21);

/// Output origin value for the vacuum/one-photon mixture input,
/// (1 - 2 eta + 2 e^{-2r}) / (pi (1 + 2 e^{-2r})^2). The squared denominator
/// is the form consistent with direct convolution (verified in tests).
double output_negativity_model1(double eta, double r);

/// Output origin value for the lossy photon-subtracted input,
/// g (g - 2 eta) / (pi (g^2 + 4 eta (g - eta) sinh^2 s)^{3/2}), g = 1 + 2 e^{-2r}.
double output_negativity_model3(double eta, double s, double r);

}  // namespace catsim
