#include "coexsim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coexsim {

PdpProfile exp_pdp_profile(int j_count, double decay) {
    if (j_count < 1) throw std::invalid_argument("exp_pdp_profile: j_count >= 1");
    if (decay < 0.0) throw std::invalid_argument("exp_pdp_profile: decay >= 0");
    PdpProfile p;
    p.avg_powers.resize(j_count);
    double sum = 0.0;
    for (int j = 0; j < j_count; ++j) {
        p.avg_powers[j] = std::exp(-decay * j);
        sum += p.avg_powers[j];
    }
    for (double& v : p.avg_powers) v /= sum;
    return p;
}

ChannelRealization draw_realization(const PdpProfile& profile, double tap_spacing, Rng& rng) {
    if (tap_spacing <= 0.0) throw std::invalid_argument("draw_realization: tap_spacing > 0");
    ChannelRealization ch;
    ch.tap_spacing = tap_spacing;
    ch.taps.resize(profile.avg_powers.size());
    for (std::size_t j = 0; j < ch.taps.size(); ++j)
        ch.taps[j] = rng.cn01() * std::sqrt(profile.avg_powers[j]);
    return ch;
}

cplx flat_rayleigh(Rng& rng) { return rng.cn01(); }

SampleBuffer apply_multipath(const SampleBuffer& sig, const ChannelRealization& ch) {
    const double d = ch.tap_spacing * sig.sample_rate;
    if (std::abs(d - std::round(d)) > 1e-9)
        throw std::invalid_argument("apply_multipath: tap spacing off the sample grid");
    const int step = static_cast<int>(std::round(d));
    SampleBuffer out;
    out.sample_rate = sig.sample_rate;
    out.samples.assign(sig.samples.size(), cplx(0.0, 0.0));
    for (std::size_t j = 0; j < ch.taps.size(); ++j) {
        const std::size_t off = j * static_cast<std::size_t>(step);
        if (off >= out.samples.size()) break;
        const cplx h = ch.taps[j];
        for (std::size_t n = off; n < out.samples.size(); ++n)
            out.samples[n] += h * sig.samples[n - off];
    }
    return out;
}

SampleBuffer apply_awgn(const SampleBuffer& sig, double noise_psd, Rng& rng) {
    if (noise_psd < 0.0) throw std::invalid_argument("apply_awgn: negative noise density");
    SampleBuffer out = sig;
    add_awgn_var(out.samples, noise_psd * sig.sample_rate, rng);
    return out;
}

void add_awgn_var(std::vector<cplx>& samples, double variance_per_sample, Rng& rng) {
    if (variance_per_sample < 0.0) throw std::invalid_argument("add_awgn_var: negative variance");
    if (variance_per_sample == 0.0) return;
    const double s = std::sqrt(variance_per_sample);
    for (cplx& v : samples) v += rng.cn01() * s;
}

cplx channel_freq_response(const ChannelRealization& ch, double f) {
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < ch.taps.size(); ++j) {
        const double ang = -2.0 * std::numbers::pi * f * ch.tap_spacing * static_cast<double>(j);
        acc += ch.taps[j] * cplx(std::cos(ang), std::sin(ang));
    }
    return acc;
}

}  // namespace coexsim
