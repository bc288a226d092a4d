#include "catsim/spectra.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace catsim {

namespace {

// Pump ratio x in [0, 1) with 4 eta x / (1 + x)^2 = 1 - 10^{-db/10}.
double pump_ratio(const SqueezerSpec& spec) {
    spec.validate();
    const double target = 1.0 - std::pow(10.0, -spec.low_freq_squeezing_db / 10.0);
    if (target == 0.0) return 0.0;
    const double eta = spec.detection_efficiency;
    const double disc = (2.0 * eta - target) * (2.0 * eta - target) - target * target;
    if (disc < 0)
        throw std::invalid_argument(
            "squeezed_variance_spectrum: requested squeezing unattainable at this efficiency");
    const double x = ((2.0 * eta - target) - std::sqrt(disc)) / target;
    if (!(x > 0 && x < 1))
        throw std::invalid_argument(
            "squeezed_variance_spectrum: requested squeezing unattainable (no pump ratio)");
    return x;
}

}  // namespace

VariancePair squeezed_variance_spectrum(const SqueezerSpec& spec, double f_hz) {
    const double x = pump_ratio(spec);
    const double eta = spec.detection_efficiency;
    const double om = f_hz / (spec.cavity_fwhm_hz / 2.0);  // in cavity half-widths
    const double om2 = om * om;
    return {0.5 * (1.0 - eta * 4.0 * x / ((1.0 + x) * (1.0 + x) + om2)),
            0.5 * (1.0 + eta * 4.0 * x / ((1.0 - x) * (1.0 - x) + om2))};
}

double teleporter_noise_spectrum(const SqueezerSpec& spec, const ChannelResponse& chan,
                                 double f_hz) {
    chan.validate();
    const VariancePair v = squeezed_variance_spectrum(spec, f_hz);
    const double ripple = chan.gain_ripple_db ? chan.gain_ripple_db(f_hz) : 0.0;
    const std::complex<double> h =
        chan.gain * std::pow(10.0, ripple / 20.0) *
        std::polar(1.0, -2.0 * std::numbers::pi * f_hz * chan.delay_s);
    const double added = 2.0 * v.v_squeezed * std::norm(1.0 + h) / 4.0 +
                         2.0 * v.v_anti * std::norm(1.0 - h) / 4.0;
    return 10.0 * std::log10((0.5 + added) / 0.5);
}

double usable_bandwidth(const SqueezerSpec& spec, const ChannelResponse& chan,
                        double fidelity_floor) {
    chan.validate();
    if (!(fidelity_floor >= 0.5 && fidelity_floor < 1.0))
        throw std::invalid_argument("usable_bandwidth: floor must be in [0.5, 1)");
    const auto fidelity = [&](double f) {
        return 1.0 / (1.0 + 2.0 * squeezed_variance_spectrum(spec, f).v_squeezed);
    };
    if (fidelity_floor == 0.5) return std::numeric_limits<double>::infinity();
    if (fidelity(0.0) < fidelity_floor)
        throw std::invalid_argument("usable_bandwidth: floor unattainable even at f = 0");

    // v_sq is monotone in f, so the fidelity crosses the floor exactly once.
    double lo = 0.0, hi = spec.cavity_fwhm_hz;
    while (fidelity(hi) >= fidelity_floor) hi *= 2.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-9 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fidelity(mid) >= fidelity_floor ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace catsim
