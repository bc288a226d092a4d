#pragma once

#include <functional>
#include <stdexcept>

// Frequency-domain model of the broadband teleporter. The squeezing
// spectrum is a below-threshold OPO Lorentzian with the pump ratio solved so
// the zero-frequency squeezing matches the requested dB figure; the channel
// mismatch leaks anti-squeezing into the output.

namespace catsim {

struct SqueezerSpec {
    double low_freq_squeezing_db = 6.9;
    double cavity_fwhm_hz = 24e6;
    double detection_efficiency = 1.0;

    void validate() const {
        if (low_freq_squeezing_db < 0)
            throw std::invalid_argument("SqueezerSpec: squeezing_db must be >= 0");
        if (cavity_fwhm_hz <= 0) throw std::invalid_argument("SqueezerSpec: fwhm must be > 0");
        if (detection_efficiency <= 0 || detection_efficiency > 1)
            throw std::invalid_argument("SqueezerSpec: efficiency must be in (0,1]");
    }
};

struct ChannelResponse {
    double gain = 1.0;  // nominal unity
    double delay_s = 0.0;
    std::function<double(double)> gain_ripple_db;  // optional deviation vs frequency

    void validate() const {
        if (gain <= 0) throw std::invalid_argument("ChannelResponse: gain must be > 0");
    }
};

struct VariancePair {
    double v_squeezed;  // <= 1/2
    double v_anti;      // >= 1/2
};

/// Lorentzian squeezing spectrum,
/// V_-/+ (f) = 1/2 [1 -/+ eta_d 4x / ((1 +/- x)^2 + (2f/fwhm)^2)],
/// with the pump ratio x in (0,1) solved from the 0-frequency squeezing.
/// Throws when the requested squeezing is unattainable at the given
/// detection efficiency.
VariancePair squeezed_variance_spectrum(const SqueezerSpec& spec, double f_hz);

/// Added teleportation noise in dB above shot noise at frequency f. With a
/// perfect channel this reduces to 10 log10(1 + 4 v_sq(f)).
double teleporter_noise_spectrum(const SqueezerSpec& spec, const ChannelResponse& chan,
                                 double f_hz);

/// Largest f such that 1 / (1 + 2 v_sq(f')) >= fidelity_floor for all
/// f' <= f. Returns +infinity for floor = 0.5 (classically always
/// achievable); throws when the floor is unattainable even at f = 0.
double usable_bandwidth(const SqueezerSpec& spec, const ChannelResponse& chan,
                        double fidelity_floor);

}  // namespace catsim
