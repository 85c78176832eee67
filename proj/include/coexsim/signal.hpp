#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "coexsim/fft.hpp"

namespace coexsim {

/// Uniformly sampled complex baseband signal.
struct SampleBuffer {
    std::vector<cplx> samples;
    double sample_rate = 0.0;  // Hz
};

/// Raised-cosine window parameters; the window spans [0, (1+beta)*t_s).
struct WindowSpec {
    double beta = 0.0;  // roll-off, 0 <= beta < 1
    double t_s = 0.0;   // seconds, t_s = t_o/(1+beta)
};

/// Three-branch raised-cosine window value at time t.
/// Rises over [0, beta*t_s), flat over [beta*t_s, t_s), falls over [t_s, (1+beta)*t_s).
double raised_cosine_window(double t, const WindowSpec& spec);

/// Unit-energy root-raised-cosine taps, length span_symbols*samples_per_symbol+1,
/// symmetric, singular points filled with their analytic limits.
std::vector<double> rrc_taps(double alpha, int span_symbols, int samples_per_symbol);

/// Multiply sample n by e^{i 2 pi f n / sample_rate}. |f| must be below Nyquist.
SampleBuffer frequency_shift(const SampleBuffer& sig, double f);

/// Band-limited polyphase resampling. target/source rate must reduce to a small
/// rational; throws std::invalid_argument otherwise.
SampleBuffer resample(const SampleBuffer& sig, double target_rate);

/// Mean |s|^2; 0 for an empty buffer.
double measure_power(const SampleBuffer& sig);
double measure_power(std::span<const cplx> samples);

}  // namespace coexsim
