#pragma once

#include "coexsim/rng.hpp"
#include "coexsim/signal.hpp"

namespace coexsim {

/// Normalized exponential power delay profile (sum of avg_powers == 1).
struct PdpProfile {
    std::vector<double> avg_powers;
};

/// One block-fading draw: complex tap gains on a uniform delay grid.
struct ChannelRealization {
    std::vector<cplx> taps;
    double tap_spacing = 0.0;  // seconds
};

PdpProfile exp_pdp_profile(int j_count, double decay);

/// Per-tap gains drawn CN(0, avg_powers[j]), independent across taps.
ChannelRealization draw_realization(const PdpProfile& profile, double tap_spacing, Rng& rng);

/// Single CN(0,1) gain for the frequency-nonselective channel.
cplx flat_rayleigh(Rng& rng);

/// Sparse tapped-delay-line convolution; tap delays must land on the sample grid.
SampleBuffer apply_multipath(const SampleBuffer& sig, const ChannelRealization& ch);

/// Adds i.i.d. circular complex Gaussian noise of per-sample variance
/// noise_psd * sample_rate.
SampleBuffer apply_awgn(const SampleBuffer& sig, double noise_psd, Rng& rng);

/// In-place variant used by the scenario composer (variance given directly).
void add_awgn_var(std::vector<cplx>& samples, double variance_per_sample, Rng& rng);

/// Frequency response of a realization at frequency f (Hz).
cplx channel_freq_response(const ChannelRealization& ch, double f);

}  // namespace coexsim
