#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catsim/fock.hpp"

// Simulated homodyne detection: exact quadrature distributions, seeded
// sampling of (theta, x) datasets, and temporal-mode-function ingestion of
// raw time traces.

namespace catsim {

struct QuadratureRecord {
    double theta;  // measured quadrature angle, [0, 2 pi)
    double x;      // quadrature value
};

struct DatasetMeta {
    std::string source;
    std::uint64_t seed = 0;
    std::size_t n = 0;
};

struct QuadratureDataset {
    std::vector<QuadratureRecord> records;
    DatasetMeta meta;
};

/// Raw detector trace; the mode function is centered on center_index.
struct TimeTrace {
    std::vector<double> samples;  // detector voltage, arbitrary units
    double sample_rate = 1e9;    // Hz
    std::size_t center_index = 250;
};

struct ModeQuadrature {
    double value;
    bool mode_contained;  // false when gamma * (distance to nearest edge) < 2
};

/// Harmonic-oscillator eigenfunctions psi_n(x) (rows n = 0..n_max) under
/// vacuum variance 1/2, evaluated at the given abscissas.
Eigen::MatrixXd hermite_functions(int n_max, const Eigen::VectorXd& xs);

/// pr(x | theta) = sum_mn rho_mn e^{i(n-m)theta} psi_n(x) psi_m(x).
Eigen::VectorXd quadrature_pdf(const DensityMatrix& rho, double theta,
                               const Eigen::VectorXd& xs);

/// Draw n records with theta ~ U[0, 2 pi) and x by inverse CDF on a
/// 4001-point table over [-6, 6]. Deterministic for a given seed; the
/// seed -> dataset mapping is release-stable (uniform doubles are derived
/// from mt19937_64 directly, not through distribution adapters).
QuadratureDataset sample_quadratures(const DensityMatrix& rho, std::size_t n,
                                     std::uint64_t seed);

/// One quadrature sample from a time trace via the mode function
/// f(t) = exp(-gamma |t - t_center|), normalized so white noise of unit
/// variance density gives unit output variance.
ModeQuadrature mode_function_quadrature(const TimeTrace& trace, double gamma);

/// gamma for a Lorentzian cavity line: pi * FWHM (half width in angular
/// frequency).
double gamma_from_fwhm(double fwhm_hz);

}  // namespace catsim
