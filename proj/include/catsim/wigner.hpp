#pragma once

#include "catsim/fock.hpp"

// Phase-space representation. Normalization convention: integral of W over
// the plane is 1, so the vacuum peaks at 1/pi and odd states have
// W(0,0) = -1/pi.

namespace catsim {

/// Rectangular, uniformly spaced phase-space grid.
struct PhaseSpaceGrid {
    double x_min, x_max, p_min, p_max;
    int nx, np;

    PhaseSpaceGrid(double x_lo, double x_hi, double p_lo, double p_hi, int n_x, int n_p);

    static PhaseSpaceGrid default_grid() { return {-5.0, 5.0, -5.0, 5.0, 201, 201}; }

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dp() const { return (p_max - p_min) / (np - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double p(int j) const { return p_min + j * dp(); }
    bool same_as(const PhaseSpaceGrid& other) const;
};

/// Sampled W(x, p); values(i, j) = W(x_i, p_j).
struct WignerGrid {
    PhaseSpaceGrid grid;
    Eigen::MatrixXd values;

    double integral() const { return values.sum() * grid.dx() * grid.dp(); }
    /// Bilinear interpolation; 0 outside the grid.
    double value_at(double x, double p) const;
};

struct MarginalDistribution {
    Eigen::VectorXd x;    // quadrature axis
    Eigen::VectorXd pdf;  // integrates to ~1 for well-contained states
};

/// W(x, p) at a single point from the Fock-basis Laguerre kernel.
double wigner_point(const DensityMatrix& rho, double x, double p);

/// Sampled Wigner function of rho. Throws if the grid is too small for the
/// state (normalization deviates by more than 1%).
WignerGrid wigner_from_rho(const DensityMatrix& rho, const PhaseSpaceGrid& grid);

/// Grid-free origin value, W(0,0) = (1/pi) sum_n (-1)^n rho_nn.
double wigner_origin_parity(const DensityMatrix& rho);

/// Odd-cat Wigner function (lobes along x, alpha real > 0).
WignerGrid cat_wigner_analytic(double alpha, const PhaseSpaceGrid& grid);

/// Wigner function of a S(s)|0>:
/// (2/pi)(e^{2s}x^2 + e^{-2s}p^2 - 1/2) exp(-e^{2s}x^2 - e^{-2s}p^2).
WignerGrid model2_wigner(double s, const PhaseSpaceGrid& grid);

/// Loss-convolved model: (1/eta)(W2 * G_lambda)(x/sqrt(eta), p/sqrt(eta)),
/// lambda = sqrt((1-eta)/(2 eta)). Computed by convolution on an enlarged
/// internal grid whose nodes map exactly onto the requested ones.
WignerGrid model3_wigner(double s, double eta, const PhaseSpaceGrid& grid);

/// Isotropic 2D Gaussian convolution. Throws if the grid margin is too
/// small to preserve normalization to 1e-4.
WignerGrid gauss_convolve(const WignerGrid& w, double sigma);

/// Phase-space overlap 2 pi * integral of W1 W2, clamped to [0, 1 + 1e-3].
double overlap_fidelity(const WignerGrid& w1, const WignerGrid& w2);

/// Distribution of the quadrature x cos(theta) + p sin(theta), by rotating
/// the grid (bilinear resampling) and integrating out the orthogonal axis.
MarginalDistribution marginal(const WignerGrid& w, double theta);

}  // namespace catsim
