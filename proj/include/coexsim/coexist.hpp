#pragma once

#include <cstdint>
#include <optional>

#include "coexsim/channel.hpp"
#include "coexsim/nb.hpp"
#include "coexsim/ofdm.hpp"
#include "coexsim/rng.hpp"

namespace coexsim {

enum class ChannelKind { awgn, fading };
enum class SystemKind { nb, ofdm };

/// Where the SIR target is referenced.
///   paper:       the scale used by the reproduction recipes (per-victim
///                documented constant applied to the co-channel reference).
///   co_channel:  NB victim -> matched-filter-output power ratio with the
///                interferer centered on the victim; OFDM victim -> receiver
///                input total power ratio.
///   input_power: raw receiver-input total power ratio for either victim.
enum class SirReference { paper, co_channel, input_power };

/// One coexistence experiment: victim + interferer + channel + geometry.
struct ScenarioConfig {
    SystemKind victim = SystemKind::nb;
    SystemKind interferer = SystemKind::ofdm;
    bool has_interferer = true;

    NbConfig nb;        // the NB system (whichever role it plays)
    OfdmConfig ofdm;    // the OFDM system (victim when both kinds are OFDM)
    OfdmConfig ofdm2;   // the OFDM interferer in OFDM-vs-OFDM scenarios

    double f_n = 10.0;       // normalized location, subcarrier spacings
    double sir_db = 0.0;
    double eb_no_db = 10.0;
    ChannelKind channel = ChannelKind::awgn;
    bool fade_interferer = true;
    SirReference sir_reference = SirReference::paper;
    double composite_rate = 5e6;
    bool literal_fn = false;  // use the (f_c - BW)/dF reading

    int victim_symbols_per_trial = 0;  // 0 -> per-victim default

    // frequency-selective model for OFDM paths
    int pdp_taps = 5;
    double pdp_decay = 0.2;
    double tap_spacing = 8e-7;

    const OfdmConfig& victim_ofdm() const { return ofdm; }
    const OfdmConfig& interferer_ofdm() const {
        return (victim == SystemKind::ofdm && interferer == SystemKind::ofdm) ? ofdm2 : ofdm;
    }

    /// Interferer center frequency relative to the victim center (Hz).
    double interferer_center_offset() const;

    int symbols_per_trial() const;

    void validate() const;
};

/// Calibration result: reference powers and the interferer amplitude gain.
struct Calibration {
    double gain = 0.0;                   // linear amplitude applied to the interferer
    double victim_ref_power = 0.0;       // at the victim reference point
    double interferer_ref_power = 0.0;   // unit-gain interferer at the reference
    double noise_var = 0.0;              // per-sample complex noise variance
};

/// Measured/theory SIR decomposition for cross-checks.
struct SirBreakdown {
    double victim_power_measured = 0.0;
    double interferer_power_measured = 0.0;
    double sir_measured_db = 0.0;
    double sir_theory_db = 0.0;
    std::optional<double> c_constant;
};

/// Paper-scale constants: ratio between the paper-figure SIR scale and the
/// co-channel reference, per victim kind (see module notes).
double paper_scale_nb_victim_db();
double paper_scale_ofdm_victim_db();

/// Interference power of the unit-gain interferer at the victim reference
/// point for the given center offset (Hz).  NB victim: matched-filter output
/// power; OFDM victim: receiver input power.
double measure_interferer_ref_power(const ScenarioConfig& scn, double center_offset_hz);

/// Gain such that the reference-point power ratio equals the target SIR.
Calibration calibrate_interferer_gain(const ScenarioConfig& scn);

/// Independent re-measurement of the calibrated SIR at the reference point
/// (fresh payloads from `seed`); closure should return the target.
double remeasure_sir_db(const ScenarioConfig& scn, const Calibration& cal, std::uint64_t seed);

/// One composed trial, ready for the victim receiver.
struct TrialData {
    SampleBuffer victim_rx;
    std::vector<std::uint8_t> truth_bits;
    // genie receiver knowledge
    double xi = 0.0;                   // NB victim timing offset
    cplx flat_gain{1.0, 0.0};          // NB victim channel gain
    std::vector<cplx> csi;             // OFDM victim per-subcarrier gains
    int n_victim_symbols = 0;
};

TrialData compose_scenario(const ScenarioConfig& scn, const Calibration& cal, Rng& rng);

/// Demodulate a composed trial and count bit errors.
struct TrialResult {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
};
TrialResult run_trial(const ScenarioConfig& scn, const Calibration& cal, Rng& rng);

/// Eq.-(12)-style closed form (implementation power units; scale constant 1).
double ofdm_mean_power_theory(const OfdmConfig& cfg);

/// Eq.-(13)-style ratio, PU power over CU power (linear).
double sir_ofdm_ofdm_theory(const OfdmConfig& cu, const OfdmConfig& pu);

/// Eq.-(10)-style SIR from an estimated C (linear).
double sir_nb_ofdm_theory(const NbConfig& nb, const OfdmConfig& ofdm, double c);

struct CEstimate {
    double c = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo estimate of the Eq.-(10) constant C at center offset f_c:
/// C = sigma_a^2 / (T_o * rho_I(f_c)), averaged over channel realizations
/// when realizations > 0 (fading), else computed on the static path.
CEstimate estimate_c_constant(const NbConfig& nb, const OfdmConfig& ofdm, double f_c,
                              int realizations, Rng& rng);

/// Full measured/theory breakdown for the scenario (diagnostics, sir-calc).
SirBreakdown sir_breakdown(const ScenarioConfig& scn);

}  // namespace coexsim
