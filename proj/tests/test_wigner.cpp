#include <doctest.h>

#include <numbers>

#include "catsim/states.hpp"
#include "catsim/wigner.hpp"
#include "catsim/homodyne.hpp"
#include "helpers.hpp"

using namespace catsim;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const PhaseSpaceGrid kGrid = PhaseSpaceGrid::default_grid();

DensityMatrix vacuum_rho() {
    return coherent(0.0, FockDim{15}).to_density_matrix();
}
DensityMatrix one_photon_rho() {
    return PureState(FockDim{15}, Eigen::VectorXcd::Unit(16, 1)).to_density_matrix();
}

}  // namespace

TEST_CASE("wigner origin values") {
    CHECK(wigner_from_rho(vacuum_rho(), kGrid).value_at(0, 0) ==
          Approx(1.0 / kPi).epsilon(1e-6));
    CHECK(wigner_from_rho(one_photon_rho(), kGrid).value_at(0, 0) ==
          Approx(-1.0 / kPi).epsilon(1e-6));
    // SOM negativity of the eta-mixture: (1 - 2 eta)/pi.
    CHECK(wigner_from_rho(mixture_model1(0.77, FockDim{15}), kGrid).value_at(0, 0) ==
          testing::within((1.0 - 2.0 * 0.77) / kPi, 1e-6));
}

TEST_CASE("origin parity sum agrees with the grid kernel") {
    CHECK(wigner_origin_parity(vacuum_rho()) == Approx(1.0 / kPi).epsilon(1e-12));
    CHECK(wigner_origin_parity(odd_cat(1.0, FockDim{15}).to_density_matrix()) ==
          Approx(-1.0 / kPi).epsilon(1e-12));

    std::mt19937_64 eng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = testing::random_density_matrix(eng, FockDim{9});
        CHECK(wigner_point(rho, 0.0, 0.0) ==
              testing::within(wigner_origin_parity(rho), 1e-6));
    }
}

TEST_CASE("wigner functions are normalized on the default grid") {
    for (const DensityMatrix& rho :
         {vacuum_rho(), one_photon_rho(),
          photon_subtracted_sv(0.28, FockDim{15}).to_density_matrix(),
          odd_cat(1.0, FockDim{15}).to_density_matrix(), mixture_model1(0.77, FockDim{15})}) {
        CHECK(wigner_from_rho(rho, kGrid).integral() == testing::within(1.0, 1e-3));
    }
}

TEST_CASE("grid too small for the state is rejected") {
    const PhaseSpaceGrid tiny(-1.0, 1.0, -1.0, 1.0, 21, 21);
    CHECK_THROWS_AS(wigner_from_rho(one_photon_rho(), tiny), std::runtime_error);
}

TEST_CASE("analytic cat Wigner function") {
    SUBCASE("origin value is -1/pi for any alpha") {
        for (double alpha : {0.3, 0.81, 1.0, 1.5})
            CHECK(cat_wigner_analytic(alpha, kGrid).value_at(0, 0) ==
                  Approx(-1.0 / kPi).epsilon(1e-9));
    }
    SUBCASE("matches the Fock-basis kernel pointwise") {
        const WignerGrid analytic = cat_wigner_analytic(1.0, kGrid);
        const WignerGrid fock =
            wigner_from_rho(odd_cat(1.0, FockDim{15}).to_density_matrix(), kGrid);
        CHECK((analytic.values - fock.values).cwiseAbs().maxCoeff() < 1e-6);
    }
    SUBCASE("normalized at the paper's output cat amplitude") {
        CHECK(cat_wigner_analytic(0.81, kGrid).integral() == testing::within(1.0, 1e-4));
    }
}

TEST_CASE("photon-subtracted model Wigner function") {
    SUBCASE("s = 0 is the one-photon Wigner function") {
        const WignerGrid w = model2_wigner(0.0, kGrid);
        const WignerGrid one = wigner_from_rho(one_photon_rho(), kGrid);
        CHECK((w.values - one.values).cwiseAbs().maxCoeff() < 1e-6);
    }
    SUBCASE("origin is -1/pi for all s") {
        for (double s : {0.1, 0.28, 0.5})
            CHECK(model2_wigner(s, kGrid).value_at(0, 0) == Approx(-1.0 / kPi).epsilon(1e-12));
    }
    SUBCASE("matches the Fock-basis kernel at s = 0.28") {
        const WignerGrid analytic = model2_wigner(0.28, kGrid);
        const WignerGrid fock =
            wigner_from_rho(photon_subtracted_sv(0.28, FockDim{15}).to_density_matrix(), kGrid);
        CHECK((analytic.values - fock.values).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("lossy model Wigner function") {
    SUBCASE("eta = 1 reduces to the pure model") {
        const WignerGrid w3 = model3_wigner(0.28, 1.0, kGrid);
        const WignerGrid w2 = model2_wigner(0.28, kGrid);
        CHECK((w3.values - w2.values).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("fitted loss reproduces the measured input negativity") {
        CHECK(model3_wigner(0.28, 0.79, kGrid).value_at(0, 0) == testing::within(-0.171, 1e-3));
    }
    SUBCASE("s = 0 equals the Wigner function of the one-photon loss mixture") {
        const WignerGrid w3 = model3_wigner(0.0, 0.77, kGrid);
        const WignerGrid mix = wigner_from_rho(mixture_model1(0.77, FockDim{15}), kGrid);
        CHECK((w3.values - mix.values).cwiseAbs().maxCoeff() < 1e-6);
    }
    SUBCASE("phase-space loss model equals the Fock-space Kraus channel") {
        const DensityMatrix lossy =
            loss_channel(photon_subtracted_sv(0.28, FockDim{15}).to_density_matrix(), 0.79);
        const WignerGrid fock = wigner_from_rho(lossy, kGrid);
        const WignerGrid analytic = model3_wigner(0.28, 0.79, kGrid);
        CHECK((analytic.values - fock.values).cwiseAbs().maxCoeff() < 1e-4);
    }
    SUBCASE("loss channel hits the paper's input negativity") {
        const DensityMatrix lossy =
            loss_channel(photon_subtracted_sv(0.28, FockDim{15}).to_density_matrix(), 0.79);
        CHECK(wigner_origin_parity(lossy) == testing::within(-0.171, 1e-3));
    }
}

TEST_CASE("gaussian convolution") {
    SUBCASE("sigma = 0 is the identity") {
        const WignerGrid w = wigner_from_rho(vacuum_rho(), kGrid);
        const WignerGrid out = gauss_convolve(w, 0.0);
        CHECK((out.values - w.values).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("vacuum blurs to the thermal peak 1/(pi (1 + 2 sigma^2))") {
        const WignerGrid w = wigner_from_rho(vacuum_rho(), kGrid);
        for (double sigma : {0.2, 0.5}) {
            const WignerGrid out = gauss_convolve(w, sigma);
            CHECK(out.value_at(0, 0) ==
                  Approx(1.0 / (kPi * (1.0 + 2.0 * sigma * sigma))).epsilon(1e-5));
        }
    }
    SUBCASE("widths add in quadrature") {
        // G_a convolved with G_b is G_sqrt(a^2+b^2); peak checks the width.
        const double a = 0.4, b = 0.3;
        WignerGrid g{kGrid, Eigen::MatrixXd(kGrid.nx, kGrid.np)};
        for (int i = 0; i < kGrid.nx; ++i)
            for (int j = 0; j < kGrid.np; ++j) {
                const double x = kGrid.x(i), p = kGrid.p(j);
                g.values(i, j) =
                    std::exp(-(x * x + p * p) / (2 * a * a)) / (2 * kPi * a * a);
            }
        const WignerGrid out = gauss_convolve(g, b);
        const double c2 = a * a + b * b;
        for (double x : {0.0, 0.5, 1.3}) {
            CHECK(out.value_at(x, 0.2) ==
                  Approx(std::exp(-(x * x + 0.04) / (2 * c2)) / (2 * kPi * c2)).epsilon(1e-5));
        }
    }
    SUBCASE("insufficient margin is rejected") {
        const PhaseSpaceGrid snug(-3.0, 3.0, -3.0, 3.0, 121, 121);
        const WignerGrid w = wigner_from_rho(vacuum_rho(), snug);
        CHECK_THROWS_AS(gauss_convolve(w, 1.0), std::runtime_error);
    }
}

TEST_CASE("phase-space overlap fidelity") {
    const WignerGrid vac = wigner_from_rho(vacuum_rho(), kGrid);
    const WignerGrid one = wigner_from_rho(one_photon_rho(), kGrid);

    CHECK(overlap_fidelity(vac, vac) == testing::within(1.0, 1e-4));
    CHECK(overlap_fidelity(vac, one) == testing::within(0.0, 1e-4));

    SUBCASE("grid mismatch is rejected") {
        const PhaseSpaceGrid other(-5, 5, -5, 5, 101, 101);
        const WignerGrid small = wigner_from_rho(vacuum_rho(), other);
        CHECK_THROWS_AS(overlap_fidelity(vac, small), std::invalid_argument);
    }
    SUBCASE("agrees with the Fock-basis fidelity for the lossy model state") {
        // Two independent fidelity routes: 2 pi int W_cat W_rho vs <cat|rho|cat>.
        // The analytic cat has lobes along x while the model state stretches
        // along p, so the state is rotated by a quarter turn first.
        const DensityMatrix lossy =
            loss_channel(photon_subtracted_sv(0.28, FockDim{15}).to_density_matrix(), 0.79);
        Eigen::MatrixXcd rot = Eigen::MatrixXcd::Zero(16, 16);
        for (int n = 0; n < 16; ++n) rot(n, n) = std::polar(1.0, -n * kPi / 2.0);
        const DensityMatrix aligned(FockDim{15}, rot * lossy.entries() * rot.adjoint());

        const double alpha = 0.82;
        const double phase_space_route = overlap_fidelity(cat_wigner_analytic(alpha, kGrid),
                                                          wigner_from_rho(aligned, kGrid));

        Eigen::VectorXcd cat = odd_cat(alpha, FockDim{15}).amplitudes();
        for (int n = 0; n < 16; ++n) cat(n) *= std::polar(1.0, n * kPi / 2.0);
        const double fock_route = fidelity_pure(PureState(FockDim{15}, cat), lossy);

        CHECK(phase_space_route == testing::within(fock_route, 1e-3));
    }
}

TEST_CASE("marginal distributions") {
    SUBCASE("vacuum marginal is Gaussian with variance 1/2 at every phase") {
        const WignerGrid vac = wigner_from_rho(vacuum_rho(), kGrid);
        for (double theta : {0.0, 0.7, kPi / 2, 2.1}) {
            const MarginalDistribution m = marginal(vac, theta);
            const double dx = kGrid.dx();
            double norm = 0.0, var = 0.0;
            for (int i = 0; i < m.x.size(); ++i) {
                norm += m.pdf(i) * dx;
                var += m.x(i) * m.x(i) * m.pdf(i) * dx;
            }
            CHECK(norm == testing::within(1.0, 1e-3));
            CHECK(var == testing::within(0.5, 1e-3));
        }
    }
    SUBCASE("vacuum marginal is phase independent") {
        const WignerGrid vac = wigner_from_rho(vacuum_rho(), kGrid);
        const MarginalDistribution m0 = marginal(vac, 0.0);
        const MarginalDistribution m1 = marginal(vac, 1.1);
        CHECK((m0.pdf - m1.pdf).cwiseAbs().maxCoeff() < 1e-6);
    }
    SUBCASE("one-photon marginal vanishes at the origin") {
        const WignerGrid one = wigner_from_rho(one_photon_rho(), kGrid);
        for (double theta : {0.0, 1.0}) {
            const MarginalDistribution m = marginal(one, theta);
            CHECK(std::abs(m.pdf(kGrid.nx / 2)) < 1e-3);  // x = 0 node
        }
    }
    SUBCASE("squeezed vacuum has variance e^{-2s}/2 along x") {
        const WignerGrid w =
            wigner_from_rho(squeezed_vacuum(0.28, FockDim{15}).to_density_matrix(), kGrid);
        const MarginalDistribution m = marginal(w, 0.0);
        double var = 0.0;
        for (int i = 0; i < m.x.size(); ++i) var += m.x(i) * m.x(i) * m.pdf(i) * kGrid.dx();
        CHECK(var == testing::within(std::exp(-0.56) / 2.0, 1e-3));
    }
}

TEST_CASE("phase space grid validation") {
    CHECK_THROWS_AS(PhaseSpaceGrid(1, -1, -5, 5, 11, 11), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSpaceGrid(-5, 5, -5, 5, 2, 11), std::invalid_argument);
}
