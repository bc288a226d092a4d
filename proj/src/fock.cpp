#include "catsim/fock.hpp"

#include <cmath>
#include <iostream>

#include <unsupported/Eigen/MatrixFunctions>

namespace catsim {

PureState::PureState(FockDim dim, Eigen::VectorXcd amplitudes)
    : dim_(dim), amps_(std::move(amplitudes)) {
    if (amps_.size() != dim_.size())
        throw std::invalid_argument("PureState: amplitude vector does not match dimension");
    if (!amps_.allFinite())
        throw std::invalid_argument("PureState: non-finite amplitudes");
    const double norm = amps_.norm();
    if (norm < 1e-12)
        throw std::invalid_argument("PureState: zero-norm amplitude vector");
    amps_ /= norm;
}

DensityMatrix PureState::to_density_matrix() const {
    return DensityMatrix(dim_, amps_ * amps_.adjoint());
}

DensityMatrix::DensityMatrix(FockDim dim, Eigen::MatrixXcd entries)
    : dim_(dim), rho_(std::move(entries)) {
    if (rho_.rows() != dim_.size() || rho_.cols() != dim_.size())
        throw std::invalid_argument("DensityMatrix: entries do not match dimension");
    if (!rho_.allFinite())
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    const double herm_dev = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > kHermitianTol)
        throw std::invalid_argument("DensityMatrix: not Hermitian (deviation " +
                                    std::to_string(herm_dev) + ")");
    rho_ = 0.5 * (rho_ + rho_.adjoint().eval());
    const double trace_dev = std::abs(rho_.trace().real() - 1.0);
    if (trace_dev > kTraceTol)
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                    std::to_string(trace_dev));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kPsdTol)
        throw std::invalid_argument("DensityMatrix: not positive semidefinite (min eigenvalue " +
                                    std::to_string(min_eig) + ")");
}

LadderOperators ladder_operators(FockDim dim) {
    const int d = dim.size();
    FockOperator a = FockOperator::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    LadderOperators ops;
    ops.annihilation = a;
    ops.creation = a.adjoint();
    ops.number = ops.creation * a;
    return ops;
}

FockOperator operator_exponential(const FockOperator& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("operator_exponential: matrix must be square");
    if (!a.allFinite())
        throw std::invalid_argument("operator_exponential: non-finite entries");
    return a.exp();
}

double fidelity_pure(const PureState& target, const DensityMatrix& rho) {
    if (target.dim() != rho.dim())
        throw std::invalid_argument("fidelity_pure: dimension mismatch");
    const Complex f = target.amplitudes().adjoint() * rho.entries() * target.amplitudes();
    return std::max(0.0, f.real());
}

DensityMatrix apply_kraus_channel(const DensityMatrix& rho,
                                  const std::vector<FockOperator>& kraus) {
    const int d = rho.dim().size();
    if (kraus.empty())
        throw std::invalid_argument("apply_kraus_channel: empty Kraus set");
    Eigen::MatrixXcd completeness = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d)
            throw std::invalid_argument("apply_kraus_channel: Kraus dimension mismatch");
        completeness += k.adjoint() * k;
    }
    // Completeness away from the truncation edge (top two Fock levels excluded).
    const int dc = std::max(1, d - 2);
    const double dev = (completeness.topLeftCorner(dc, dc) - Eigen::MatrixXcd::Identity(dc, dc))
                           .cwiseAbs()
                           .maxCoeff();
    if (dev > 1e-3)
        throw std::invalid_argument("apply_kraus_channel: Kraus set not trace preserving "
                                    "(deviation " + std::to_string(dev) + ")");

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& k : kraus) out += k * rho.entries() * k.adjoint();
    out = 0.5 * (out + out.adjoint().eval());
    const double tr = out.trace().real();
    detail::warn_leakage("apply_kraus_channel", std::abs(1.0 - tr));
    return DensityMatrix(rho.dim(), out / tr);
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = Frobenius norm squared for Hermitian rho.
    return rho.entries().squaredNorm();
}

namespace detail {
void warn_leakage(const char* op, double leakage) {
    if (leakage > 1e-4)
        std::cerr << "catsim: " << op << ": truncation leakage " << leakage
                  << " exceeds 1e-4; consider a larger n_max\n";
}
}  // namespace detail

}  // namespace catsim
