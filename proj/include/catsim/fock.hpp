#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

// Truncated Fock-space linear algebra: states, operators, channels and the
// scalar functionals everything else is built on.
//
// Conventions used throughout the library: hbar = 1, [x,p] = i, vacuum
// quadrature variance 1/2.

namespace catsim {

using Complex = std::complex<double>;
using FockOperator = Eigen::MatrixXcd;

/// Photon-number cutoff; Hilbert-space dimension is n_max + 1.
struct FockDim {
    int n_max = 15;

    FockDim() = default;
    explicit FockDim(int n) : n_max(n) {
        if (n_max < 1) throw std::invalid_argument("FockDim: n_max must be >= 1");
    }
    int size() const { return n_max + 1; }
    bool operator==(const FockDim&) const = default;
};

class DensityMatrix;

/// Normalized pure state in the truncated Fock basis.
class PureState {
  public:
    PureState(FockDim dim, Eigen::VectorXcd amplitudes);

    FockDim dim() const { return dim_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Complex amplitude(int n) const { return amps_(n); }

    DensityMatrix to_density_matrix() const;

  private:
    FockDim dim_;
    Eigen::VectorXcd amps_;
};

/// Hermitian, unit-trace, positive-semidefinite operator on the truncated
/// Fock space. Invariants are checked on construction.
class DensityMatrix {
  public:
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kTraceTol = 1e-8;
    static constexpr double kPsdTol = 1e-8;  // min eigenvalue >= -kPsdTol

    DensityMatrix(FockDim dim, Eigen::MatrixXcd entries);

    FockDim dim() const { return dim_; }
    const Eigen::MatrixXcd& entries() const { return rho_; }
    Complex entry(int m, int n) const { return rho_(m, n); }

  private:
    FockDim dim_;
    Eigen::MatrixXcd rho_;
};

struct LadderOperators {
    FockOperator annihilation;  // <n-1|a|n> = sqrt(n)
    FockOperator creation;
    FockOperator number;
};

LadderOperators ladder_operators(FockDim dim);

/// Matrix exponential, accurate to 1e-10 relative on the dimensions used
/// here (dim <= 32). Rejects non-finite input.
FockOperator operator_exponential(const FockOperator& a);

/// <psi|rho|psi>. Tiny negative round-off is clamped to 0.
double fidelity_pure(const PureState& target, const DensityMatrix& rho);

/// rho' = sum_k K rho K^dag, renormalized to unit trace. The Kraus set must
/// be trace preserving away from the truncation edge: completeness is
/// enforced on the subspace n <= n_max - 2 (deviation > 1e-3 is rejected).
DensityMatrix apply_kraus_channel(const DensityMatrix& rho,
                                  const std::vector<FockOperator>& kraus);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

namespace detail {
/// Truncation-leakage policy: renormalizing operations report the trace
/// they dropped; above 1e-4 a warning is emitted on stderr (never an error).
void warn_leakage(const char* op, double leakage);
}  // namespace detail

}  // namespace catsim
