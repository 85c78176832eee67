#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coexsim/signal.hpp"

namespace coexsim {

enum class Modulation { bpsk, qpsk };

inline int bits_per_symbol(Modulation m) { return m == Modulation::bpsk ? 1 : 2; }

/// Full OFDM transceiver parameterization.  Subcarrier index k in {0..N-1}
/// maps to baseband frequency (k - N/2) * delta_f (band centered at 0); the
/// high band edge is at +N/2 * delta_f.
struct OfdmConfig {
    int n_total = 128;
    std::vector<int> active_set;  // sorted ascending
    double delta_f = 9765.625;
    double t_cp = 25.6e-6;
    double beta = 0.0;
    Modulation modulation = Modulation::qpsk;
    double sigma_a2 = 1.0;
    int oversampling = 4;  // L

    double t_u() const { return 1.0 / delta_f; }
    double t_s() const { return t_u() + t_cp; }
    double t_p() const { return beta * t_s(); }
    double t_o() const { return (1.0 + beta) * t_s(); }
    double base_rate() const { return n_total * delta_f; }
    double sim_rate() const { return oversampling * base_rate(); }
    double bandwidth() const { return n_total * delta_f; }
    int n_active() const { return static_cast<int>(active_set.size()); }

    // integral sample counts at sim_rate; throws if the grid does not divide
    int useful_samples() const;
    int cp_samples() const;
    int postfix_samples() const;
    int symbol_samples() const;  // per T_o

    void validate() const;
};

/// Config with all n subcarriers active and Table-like defaults.
OfdmConfig make_ofdm_config(int n_total, double bandwidth_hz, double cp_fraction,
                            double beta, Modulation mod, double sigma_a2, int oversampling);

struct OfdmFrame {
    std::vector<std::vector<cplx>> data_symbols;  // [symbol][active index]
    std::vector<std::uint8_t> bits;
};

/// Gray-mapped PSK points of power sigma_a2.  QPSK: bits 00 -> (+,+)/sqrt2.
std::vector<cplx> map_bits(std::span<const std::uint8_t> bits, Modulation mod, double sigma_a2);

/// Hard decisions back to bits (inverse of map_bits at high SNR).
std::vector<std::uint8_t> demap_hard(std::span<const cplx> points, Modulation mod);

OfdmFrame make_frame(std::span<const std::uint8_t> bits, const OfdmConfig& cfg);

/// Eq.-style synthesis: per symbol, oversampled inverse transform of the
/// active spectrum, cyclic prefix + postfix, raised-cosine window, symbols
/// concatenated at stride T_o.  Amplitude convention: subcarrier amplitudes
/// enter the time signal unscaled, so the mean power of a beta=0 symbol is
/// N_u * sigma_a2 (scale constant 1.0; documented for power cross-checks).
SampleBuffer ofdm_modulate(const OfdmFrame& frame, const OfdmConfig& cfg);

/// CP/postfix strip, forward transform of the T_u core, one-tap equalization
/// by csi (per active subcarrier), hard demap.  rx must start on a symbol
/// boundary and hold an integer number of symbols.
std::vector<std::uint8_t> ofdm_demodulate(const SampleBuffer& rx, const OfdmConfig& cfg,
                                          std::span<const cplx> csi);

enum class Edge { low, high };

/// Remove `count` active indices nearest the given band edge.
OfdmConfig null_edge_subcarriers(const OfdmConfig& cfg, int count, Edge edge);

/// Peak-to-average power ratio (linear) of a sample span.
double papr(std::span<const cplx> symbol_core);

/// Per-symbol PAPRs over the [0, T_s) core of each windowed symbol.
std::vector<double> papr_per_symbol(const SampleBuffer& sig, const OfdmConfig& cfg);

/// zeta = m*N_u / (T_s*(1+beta)) / (N*delta_f), (bit/s)/Hz.
double spectral_efficiency(const OfdmConfig& cfg);

}  // namespace coexsim
