#include "catsim/tomography.hpp"

#include <cmath>
#include <numbers>

#include "catsim/states.hpp"

namespace catsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kProbFloor = 1e-300;

Eigen::VectorXcd projector_vector(double theta, double x, FockDim dim) {
    Eigen::VectorXd xv(1);
    xv(0) = x;
    const Eigen::MatrixXd psi = hermite_functions(dim.n_max, xv);
    Eigen::VectorXcd v(dim.size());
    for (int m = 0; m < dim.size(); ++m) v(m) = std::polar(psi(m, 0), m * theta);
    return v;
}

struct BinnedData {
    Eigen::MatrixXcd v;  // d x B, one projector vector per active bin
    Eigen::VectorXd counts;
};

BinnedData bin_dataset(const QuadratureDataset& data, const MleOptions& opts) {
    const auto& b = opts.binning;
    const int n_bins = b.n_theta_bins * b.n_x_bins;
    std::vector<double> counts(n_bins, 0.0);
    for (const auto& rec : data.records) {
        if (!(rec.theta >= 0.0 && rec.theta < 2.0 * kPi))
            throw std::invalid_argument("mle_reconstruct: theta outside [0, 2 pi)");
        if (!(std::abs(rec.x) <= b.x_range))
            throw std::invalid_argument("mle_reconstruct: sample outside the binning range");
        const int j = std::min(int(rec.theta / (2.0 * kPi) * b.n_theta_bins), b.n_theta_bins - 1);
        const int k = std::min(int((rec.x + b.x_range) / (2.0 * b.x_range) * b.n_x_bins),
                               b.n_x_bins - 1);
        counts[j * b.n_x_bins + k] += 1.0;
    }

    int active = 0;
    for (double c : counts) active += (c > 0);
    if (active == 0) throw std::invalid_argument("mle_reconstruct: all bins empty");

    BinnedData out;
    out.v.resize(opts.dim.size(), active);
    out.counts.resize(active);
    const double dtheta = 2.0 * kPi / b.n_theta_bins;
    const double dx = 2.0 * b.x_range / b.n_x_bins;
    int col = 0;
    for (int j = 0; j < b.n_theta_bins; ++j) {
        for (int k = 0; k < b.n_x_bins; ++k) {
            const double c = counts[j * b.n_x_bins + k];
            if (c <= 0) continue;
            const double theta = (j + 0.5) * dtheta;
            const double x = -b.x_range + (k + 0.5) * dx;
            out.v.col(col) = projector_vector(theta, x, opts.dim);
            out.counts(col) = c;
            ++col;
        }
    }
    return out;
}

BinnedData per_sample_data(const QuadratureDataset& data, const MleOptions& opts) {
    if (data.records.size() > 10000)
        throw std::invalid_argument("mle_reconstruct: per-sample mode is limited to 1e4 records");
    BinnedData out;
    out.v.resize(opts.dim.size(), data.records.size());
    out.counts = Eigen::VectorXd::Ones(data.records.size());
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        const auto& rec = data.records[i];
        if (!(rec.theta >= 0.0 && rec.theta < 2.0 * kPi))
            throw std::invalid_argument("mle_reconstruct: theta outside [0, 2 pi)");
        out.v.col(i) = projector_vector(rec.theta, rec.x, opts.dim);
    }
    return out;
}

}  // namespace

FockOperator projector(double theta, double x, FockDim dim) {
    const Eigen::VectorXcd v = projector_vector(theta, x, dim);
    return v * v.adjoint();
}

ReconstructionReport mle_reconstruct(const QuadratureDataset& data, const MleOptions& opts) {
    opts.validate();
    if (data.records.empty()) throw std::invalid_argument("mle_reconstruct: empty dataset");

    const BinnedData binned = opts.per_sample ? per_sample_data(data, opts)
                                              : bin_dataset(data, opts);
    const int d = opts.dim.size();

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(d, d) / double(d);

    const auto log_likelihood = [&](const Eigen::MatrixXcd& state, Eigen::VectorXd& probs) {
        probs = (binned.v.conjugate().cwiseProduct(state * binned.v))
                    .colwise()
                    .sum()
                    .real()
                    .transpose();
        probs = probs.cwiseMax(kProbFloor);
        return binned.counts.dot(probs.array().log().matrix());
    };

    ReconstructionReport report{DensityMatrix(opts.dim, rho), 0, 0.0, false, true, 0.0};
    Eigen::VectorXd probs;
    double ll = log_likelihood(rho, probs);

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        const Eigen::VectorXd weights = binned.counts.array() / probs.array();
        const Eigen::MatrixXcd r_op = binned.v * weights.asDiagonal() * binned.v.adjoint();
        Eigen::MatrixXcd next = r_op * rho * r_op;
        next = 0.5 * (next + next.adjoint().eval());
        next /= next.trace().real();

        const double ll_next = log_likelihood(next, probs);
        const double increment = ll_next - ll;
        report.min_loglik_increment = std::min(report.min_loglik_increment, increment);
        if (increment < -1e-12 * std::abs(ll)) report.loglik_monotone = false;

        rho = std::move(next);
        report.iterations = iter + 1;
        const bool done = std::abs(increment) <= opts.loglik_tol * std::abs(ll);
        ll = ll_next;
        if (done) {
            report.converged = true;
            break;
        }
    }
    report.log_likelihood = ll;

    // Diagonal clean-up at output only: clamp eigenvalues in [-1e-10, 0).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
    rho = es.eigenvectors() * evals.asDiagonal() * es.eigenvectors().adjoint();
    rho /= rho.trace().real();
    report.rho = DensityMatrix(opts.dim, rho);
    return report;
}

double mean_photon(const DensityMatrix& rho) {
    double mean = 0.0;
    for (int n = 1; n < rho.dim().size(); ++n) mean += n * rho.entry(n, n).real();
    return mean;
}

Eigen::VectorXd photon_distribution(const DensityMatrix& rho) {
    return rho.entries().diagonal().real().cwiseMax(0.0);
}

namespace {

// Odd cat with complex amplitude alpha e^{i phase}; phase only enters as a
// diagonal rotation of the real-alpha cat.
double cat_overlap(const Eigen::MatrixXcd& rho, double alpha, double phase) {
    const int d = int(rho.rows());
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
    double term = alpha;  // alpha^n / sqrt(n!) for odd n
    for (int n = 1; n < d; ++n) {
        if (n > 1) term *= alpha / std::sqrt(double(n));
        if (n % 2 == 1) c(n) = std::polar(term, n * phase);
    }
    c /= c.norm();
    return (c.adjoint() * rho * c)(0).real();
}

}  // namespace

CatFit nearest_cat_fidelity(const DensityMatrix& rho, double alpha_lo, double alpha_hi) {
    if (!(0 < alpha_lo && alpha_lo < alpha_hi))
        throw std::invalid_argument("nearest_cat_fidelity: need 0 < lo < hi");
    const auto& m = rho.entries();

    const double step = 0.005;
    const int n_alpha = int(std::ceil((alpha_hi - alpha_lo) / step)) + 1;
    const int n_phase = 48;  // cat(alpha e^{i pi}) = cat(alpha), so [0, pi) suffices
    double best_a = alpha_lo, best_ph = 0.0, best_f = -1.0;
    for (int i = 0; i < n_alpha; ++i) {
        const double a = std::min(alpha_lo + i * step, alpha_hi);
        for (int j = 0; j < n_phase; ++j) {
            const double ph = j * kPi / n_phase;
            const double f = cat_overlap(m, a, ph);
            if (f > best_f) {
                best_f = f;
                best_a = a;
                best_ph = ph;
            }
        }
    }

    // Coordinate-wise golden-section refinement around the grid optimum.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto refine = [&](double lo, double hi, const auto& f) {
        double a = lo, b = hi;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = f(c1), f2 = f(c2);
        while (b - a > 1e-7) {
            if (f1 < f2) {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + gr * (b - a);
                f2 = f(c2);
            } else {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - gr * (b - a);
                f1 = f(c1);
            }
        }
        return 0.5 * (a + b);
    };
    for (int round = 0; round < 2; ++round) {
        best_a = refine(std::max(alpha_lo, best_a - step), std::min(alpha_hi, best_a + step),
                        [&](double a) { return cat_overlap(m, a, best_ph); });
        best_ph = refine(best_ph - kPi / n_phase, best_ph + kPi / n_phase,
                         [&](double ph) { return cat_overlap(m, best_a, ph); });
    }
    best_f = cat_overlap(m, best_a, best_ph);

    const bool boundary = best_a <= alpha_lo + 2e-7 || best_a >= alpha_hi - 2e-7;
    return {best_a, best_f, boundary};
}

}  // namespace catsim
