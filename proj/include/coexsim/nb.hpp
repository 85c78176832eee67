#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coexsim/ofdm.hpp"
#include "coexsim/signal.hpp"

namespace coexsim {

/// Narrow-band single-carrier QPSK transceiver parameters.
struct NbConfig {
    double bw_n = 15e3;     // occupied bandwidth
    double alpha = 0.35;    // RRC roll-off
    double sigma_b2 = 1.0;  // per-symbol power
    int tx_span = 16;       // transmit RRC truncation, symbols
    int rx_span = 16;       // receive MF truncation, symbols

    double symbol_rate() const { return bw_n / (1.0 + alpha); }
    double symbol_period() const { return 1.0 / symbol_rate(); }
    int samples_per_symbol(double sample_rate) const;

    void validate() const;
};

/// QPSK Gray mapping with power sigma_b2 (same convention as map_bits).
std::vector<cplx> nb_map_bits(std::span<const std::uint8_t> bits, double sigma_b2);

/// RRC pulse train with timing offset xi in [0, T); pulse k starts at sample
/// round-free position k*M + xi*rate (fractional part realized by evaluating
/// the pulse off-grid).  Output includes filter transients; decision instant
/// for symbol k sits at sample k*M relative to the buffer start when
/// correlated with the same shifted pulse (see nb_receive).
SampleBuffer nb_modulate(std::span<const cplx> symbols, const NbConfig& cfg,
                         double sample_rate, double xi);

/// Genie receiver: correlate with the xi-shifted unit-energy pulse at symbol
/// spacing, divide by flat_gain, hard-decide QPSK.  n_symbols must match the
/// modulated count; rx must be aligned to the nb_modulate output start.
std::vector<std::uint8_t> nb_receive(const SampleBuffer& rx, const NbConfig& cfg,
                                     double xi, cplx flat_gain, int n_symbols);

/// Complex matched-filter outputs at the decision instants (pre-slicer).
std::vector<cplx> nb_decision_points(const SampleBuffer& rx, const NbConfig& cfg,
                                     double xi, int n_symbols);

/// Full-rate matched-filter output (power measurements, calibration).
SampleBuffer nb_matched_filter(const SampleBuffer& rx, const NbConfig& cfg);

/// Eq.-(8)-style closed form: sigma_b2 * (1 - alpha/4).
double nb_mf_power_theory(const NbConfig& cfg);

namespace detail {
/// xi-shifted unit-energy pulse used by both ends; length span*M + M + 1.
std::vector<double> shifted_pulse(const NbConfig& cfg, double sample_rate, double xi);
}

}  // namespace coexsim
