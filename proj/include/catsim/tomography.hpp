#pragma once

#include "catsim/fock.hpp"
#include "catsim/homodyne.hpp"

// Maximum-likelihood state reconstruction from quadrature data (the R-rho-R
// iteration) and the metrics derived from reconstructed states.

namespace catsim {

struct BinningOptions {
    int n_theta_bins = 36;
    int n_x_bins = 161;
    double x_range = 6.0;  // bins cover [-x_range, x_range]
};

struct MleOptions {
    FockDim dim{15};
    int max_iters = 500;
    double loglik_tol = 1e-9;  // relative improvement stopping threshold
    BinningOptions binning;
    bool per_sample = false;  // exact per-sample likelihood, datasets up to 1e4

    void validate() const {
        if (max_iters < 0) throw std::invalid_argument("MleOptions: max_iters must be >= 0");
        if (loglik_tol <= 0) throw std::invalid_argument("MleOptions: loglik_tol must be > 0");
        if (binning.n_theta_bins < 1 || binning.n_x_bins < 2 || binning.x_range <= 0)
            throw std::invalid_argument("MleOptions: bad binning");
    }
};

struct ReconstructionReport {
    DensityMatrix rho;
    int iterations = 0;
    double log_likelihood = 0.0;
    bool converged = false;
    bool loglik_monotone = true;      // no iteration decreased the likelihood
    double min_loglik_increment = 0;  // most negative per-iteration change
};

/// POVM element |theta, x><theta, x| in the truncated basis,
/// Pi_mn = e^{i(m-n)theta} psi_m(x) psi_n(x), so Tr(Pi rho) = pr(x | theta).
FockOperator projector(double theta, double x, FockDim dim);

/// Iterate rho <- N[R rho R], R = sum_b (f_b / Tr(Pi_b rho)) Pi_b over the
/// binned dataset, from the maximally mixed state.
ReconstructionReport mle_reconstruct(const QuadratureDataset& data, const MleOptions& opts);

/// <n> = sum_n n rho_nn.
double mean_photon(const DensityMatrix& rho);

/// Diagonal (rho_00, ..., rho_NN), clamped at 0.
Eigen::VectorXd photon_distribution(const DensityMatrix& rho);

struct CatFit {
    double alpha_star;
    double f_cat;
    bool at_boundary;  // maximum attained at an edge of the alpha range
};

/// Maximum of <cat(alpha)|rho|cat(alpha)> over a dense alpha scan
/// (step <= 0.005) with local refinement. The cat's phase-space orientation
/// is optimized along with alpha, so the figure does not depend on which
/// quadrature the state happens to be squeezed along; alpha_star is the
/// modulus of the optimal cat amplitude.
CatFit nearest_cat_fidelity(const DensityMatrix& rho, double alpha_lo, double alpha_hi);

}  // namespace catsim
