#include "coexsim/coexist.hpp"

#include <cmath>
#include <stdexcept>

namespace coexsim {

namespace {

constexpr double kDbToLin = 0.23025850929940457;  // ln(10)/10

double from_db(double db) { return std::exp(db * kDbToLin); }
double to_db(double lin) { return 10.0 * std::log10(lin); }

// deterministic streams for calibration measurements
constexpr std::uint64_t kCalStream = 0xCA11B8A7E0000001ULL;

}  // namespace

// Paper-figure SIR scale relative to the co-channel reference (NB victim) or
// to the receiver-input power ratio (OFDM victim).  These constants absorb
// the normalization of the paper's figure axes, which is not a fixed physical
// power ratio across figures; values are pinned by the reproduction study
// (see the recipes and the acceptance suite).
double paper_scale_nb_victim_db() { return 7.7; }
double paper_scale_ofdm_victim_db() { return 10.7; }
double paper_scale_nb_into_ofdm_db() { return 38.5; }

double ScenarioConfig::interferer_center_offset() const {
    if (victim == SystemKind::ofdm && interferer == SystemKind::ofdm) {
        // edge-to-edge guard of f_n subcarrier spacings (victim numerology)
        return victim_ofdm().bandwidth() / 2.0 + f_n * victim_ofdm().delta_f +
               interferer_ofdm().bandwidth() / 2.0;
    }
    // NB on one side of the OFDM band: NB center beyond the OFDM high edge
    const OfdmConfig& oc = ofdm;
    if (literal_fn) return oc.bandwidth() + f_n * oc.delta_f;
    return oc.bandwidth() / 2.0 + f_n * oc.delta_f;
}

int ScenarioConfig::symbols_per_trial() const {
    if (victim_symbols_per_trial > 0) return victim_symbols_per_trial;
    // fading trials stay short so deep fades contribute few errors each and
    // the block-fading estimator converges
    if (victim == SystemKind::nb) return channel == ChannelKind::fading ? 8 : 128;
    return 10;
}

void ScenarioConfig::validate() const {
    nb.validate();
    ofdm.validate();
    if (victim == SystemKind::ofdm && interferer == SystemKind::ofdm) ofdm2.validate();
    if (victim == interferer && victim == SystemKind::nb)
        throw std::invalid_argument("scenario: NB-on-NB is not modeled");
    if (composite_rate <= 0.0) throw std::invalid_argument("scenario: composite_rate > 0");
    if (std::abs(ofdm.sim_rate() - composite_rate) > 1e-6)
        throw std::invalid_argument("scenario: ofdm oversampling must land on the composite rate");
    if (victim == SystemKind::ofdm && interferer == SystemKind::ofdm &&
        std::abs(ofdm2.sim_rate() - composite_rate) > 1e-6)
        throw std::invalid_argument("scenario: interferer ofdm must land on the composite rate");
    (void)nb.samples_per_symbol(composite_rate);
    if (has_interferer) {
        const double half_bw =
            (interferer == SystemKind::nb) ? nb.bw_n / 2.0 : interferer_ofdm().bandwidth() / 2.0;
        if (std::abs(interferer_center_offset()) + half_bw >= composite_rate / 2.0)
            throw std::invalid_argument("scenario: interferer exceeds the composite Nyquist band");
    }
    if (f_n < 0.0) throw std::invalid_argument("scenario: f_n >= 0");
}

namespace {

// long unit-gain interferer segment at its natural band position
SampleBuffer synth_interferer(const ScenarioConfig& scn, int n_symbols, Rng& rng) {
    if (scn.interferer == SystemKind::ofdm) {
        const OfdmConfig& cfg = scn.interferer_ofdm();
        const int m = bits_per_symbol(cfg.modulation);
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_symbols) * cfg.n_active() * m);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
        return ofdm_modulate(make_frame(bits, cfg), cfg);
    }
    const NbConfig& cfg = scn.nb;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_symbols) * 2);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
    const double xi = rng.uniform() * cfg.symbol_period();
    return nb_modulate(nb_map_bits(bits, cfg.sigma_b2), cfg, scn.composite_rate, xi);
}

// steady-state mean power of the NB matched-filter output for the given input
double mf_output_power(const SampleBuffer& input, const NbConfig& nb) {
    SampleBuffer y = nb_matched_filter(input, nb);
    const int m = nb.samples_per_symbol(input.sample_rate);
    const std::size_t edge = static_cast<std::size_t>(nb.rx_span) * m;
    if (y.samples.size() <= 2 * edge) throw std::invalid_argument("mf_output_power: segment too short");
    return measure_power(std::span<const cplx>(y.samples.data() + edge, y.samples.size() - 2 * edge));
}

}  // namespace

namespace {

double measure_interferer_ref_power_seeded(const ScenarioConfig& scn, double center_offset_hz,
                                           std::uint64_t seed) {
    Rng rng = Rng::for_trial(seed, 0, 0, kCalStream);
    const int n_sym = (scn.interferer == SystemKind::ofdm) ? 1500 : 6000;
    SampleBuffer sig = synth_interferer(scn, n_sym, rng);
    if (center_offset_hz != 0.0) sig = frequency_shift(sig, center_offset_hz);
    if (scn.victim == SystemKind::nb) return mf_output_power(sig, scn.nb);
    return measure_power(sig);
}

double measure_victim_ref_power_seeded(const ScenarioConfig& scn, std::uint64_t seed) {
    Rng rng = Rng::for_trial(seed, 0, 0, kCalStream);
    if (scn.victim == SystemKind::nb) {
        std::vector<std::uint8_t> bits(6000 * 2);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
        SampleBuffer tx = nb_modulate(nb_map_bits(bits, scn.nb.sigma_b2), scn.nb,
                                      scn.composite_rate, 0.0);
        return mf_output_power(tx, scn.nb);
    }
    const OfdmConfig& v = scn.victim_ofdm();
    const int m = bits_per_symbol(v.modulation);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(200) * v.n_active() * m);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
    return measure_power(ofdm_modulate(make_frame(bits, v), v));
}

double paper_scale_for(const ScenarioConfig& scn) {
    if (scn.victim == SystemKind::nb) return from_db(paper_scale_nb_victim_db());
    if (scn.interferer == SystemKind::nb) return from_db(paper_scale_nb_into_ofdm_db());
    return from_db(paper_scale_ofdm_victim_db());
}

}  // namespace

double measure_interferer_ref_power(const ScenarioConfig& scn, double center_offset_hz) {
    return measure_interferer_ref_power_seeded(scn, center_offset_hz, 0x5EED0CA1);
}

namespace {

// reference powers per the scenario's SIR convention
void measure_reference_powers(const ScenarioConfig& scn, std::uint64_t victim_seed,
                              std::uint64_t int_seed, double& p_vic, double& p_int) {
    if (scn.sir_reference == SirReference::input_power) {
        Rng rng = Rng::for_trial(int_seed, 0, 0, kCalStream);
        const int n_sym = (scn.interferer == SystemKind::ofdm) ? 1500 : 6000;
        p_int = measure_power(synth_interferer(scn, n_sym, rng));
        if (scn.victim == SystemKind::nb) {
            Rng rng2 = Rng::for_trial(victim_seed, 1, 0, kCalStream);
            std::vector<std::uint8_t> bits(6000 * 2);
            for (auto& b : bits) b = static_cast<std::uint8_t>(rng2.below(2));
            p_vic = measure_power(nb_modulate(nb_map_bits(bits, scn.nb.sigma_b2), scn.nb,
                                              scn.composite_rate, 0.0));
        } else {
            p_vic = measure_victim_ref_power_seeded(scn, victim_seed);
        }
        return;
    }
    p_vic = measure_victim_ref_power_seeded(scn, victim_seed);
    const double ref_offset =
        (scn.victim == SystemKind::nb) ? 0.0 : scn.interferer_center_offset();
    p_int = measure_interferer_ref_power_seeded(scn, ref_offset, int_seed);
    if (scn.sir_reference == SirReference::paper) p_int *= paper_scale_for(scn);
}

}  // namespace

Calibration calibrate_interferer_gain(const ScenarioConfig& scn) {
    scn.validate();
    Calibration cal;

    if (scn.victim == SystemKind::nb) {
        cal.noise_var = scn.nb.sigma_b2 / (2.0 * from_db(scn.eb_no_db));
    } else {
        const OfdmConfig& v = scn.victim_ofdm();
        cal.noise_var = v.useful_samples() * v.sigma_a2 / (2.0 * from_db(scn.eb_no_db));
    }

    if (!scn.has_interferer || std::isinf(scn.sir_db)) {
        cal.victim_ref_power = measure_victim_ref_power_seeded(scn, 0x5EEDF00D);
        cal.gain = 0.0;
        cal.interferer_ref_power = 0.0;
        return cal;
    }

    measure_reference_powers(scn, 0x5EEDF00D, 0x5EED0CA1, cal.victim_ref_power,
                             cal.interferer_ref_power);
    cal.gain = std::sqrt(cal.victim_ref_power / (cal.interferer_ref_power * from_db(scn.sir_db)));
    return cal;
}

double remeasure_sir_db(const ScenarioConfig& scn, const Calibration& cal, std::uint64_t seed) {
    double p_vic = 0.0, p_int = 0.0;
    measure_reference_powers(scn, seed ^ 0xF00D, seed ^ 0xCA1, p_vic, p_int);
    return to_db(p_vic / (cal.gain * cal.gain * p_int));
}

TrialData compose_scenario(const ScenarioConfig& scn, const Calibration& cal, Rng& rng) {
    TrialData td;
    const int n_sym = scn.symbols_per_trial();
    td.n_victim_symbols = n_sym;
    const double fc = scn.interferer_center_offset();

    if (scn.victim == SystemKind::nb) {
        td.truth_bits.resize(static_cast<std::size_t>(n_sym) * 2);
        for (auto& b : td.truth_bits) b = static_cast<std::uint8_t>(rng.below(2));
        td.xi = rng.uniform() * scn.nb.symbol_period();
        SampleBuffer tx = nb_modulate(nb_map_bits(td.truth_bits, scn.nb.sigma_b2), scn.nb,
                                      scn.composite_rate, td.xi);
        td.flat_gain = cplx(1.0, 0.0);
        if (scn.channel == ChannelKind::fading) td.flat_gain = flat_rayleigh(rng);
        for (cplx& s : tx.samples) s *= td.flat_gain;

        if (cal.gain > 0.0) {
            const OfdmConfig& ic = scn.interferer_ofdm();
            const int to = ic.symbol_samples();
            const int need = static_cast<int>(tx.samples.size()) + to;
            const int n_int = need / to + 2;
            SampleBuffer intr = [&] {
                const int m = bits_per_symbol(ic.modulation);
                std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_int) * ic.n_active() * m);
                for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
                return ofdm_modulate(make_frame(bits, ic), ic);
            }();
            if (scn.channel == ChannelKind::fading && scn.fade_interferer) {
                const PdpProfile pdp = exp_pdp_profile(scn.pdp_taps, scn.pdp_decay);
                intr = apply_multipath(intr, draw_realization(pdp, scn.tap_spacing, rng));
            }
            // interferer band below the victim: shift by -f_c
            intr = frequency_shift(intr, -fc);
            const std::size_t start = static_cast<std::size_t>(rng.below(to));
            for (std::size_t i = 0; i < tx.samples.size(); ++i)
                tx.samples[i] += cal.gain * intr.samples[start + i];
        }
        add_awgn_var(tx.samples, cal.noise_var, rng);
        td.victim_rx = std::move(tx);
        return td;
    }

    // OFDM victim
    const OfdmConfig& v = scn.victim_ofdm();
    const int m = bits_per_symbol(v.modulation);
    td.truth_bits.resize(static_cast<std::size_t>(n_sym) * v.n_active() * m);
    for (auto& b : td.truth_bits) b = static_cast<std::uint8_t>(rng.below(2));
    SampleBuffer tx = ofdm_modulate(make_frame(td.truth_bits, v), v);

    td.csi.assign(v.n_active(), cplx(1.0, 0.0));
    if (scn.channel == ChannelKind::fading) {
        const PdpProfile pdp = exp_pdp_profile(scn.pdp_taps, scn.pdp_decay);
        const ChannelRealization ch = draw_realization(pdp, scn.tap_spacing, rng);
        tx = apply_multipath(tx, ch);
        for (int i = 0; i < v.n_active(); ++i) {
            const double f = (v.active_set[i] - v.n_total / 2) * v.delta_f;
            td.csi[static_cast<std::size_t>(i)] = channel_freq_response(ch, f);
        }
    }

    if (cal.gain > 0.0) {
        SampleBuffer intr;
        std::size_t start = 0;
        if (scn.interferer == SystemKind::nb) {
            const int msps = scn.nb.samples_per_symbol(scn.composite_rate);
            const int n_int = static_cast<int>(tx.samples.size()) / msps + 2 * scn.nb.tx_span + 4;
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_int) * 2);
            for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
            const double xi_int = rng.uniform() * scn.nb.symbol_period();
            intr = nb_modulate(nb_map_bits(bits, scn.nb.sigma_b2), scn.nb, scn.composite_rate, xi_int);
            if (scn.channel == ChannelKind::fading && scn.fade_interferer) {
                const cplx h = flat_rayleigh(rng);
                for (cplx& s : intr.samples) s *= h;
            }
            start = static_cast<std::size_t>(rng.below(msps));
        } else {
            const OfdmConfig& ic = scn.interferer_ofdm();
            const int to = ic.symbol_samples();
            const int n_int = static_cast<int>(tx.samples.size()) / to + 3;
            const int mi = bits_per_symbol(ic.modulation);
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_int) * ic.n_active() * mi);
            for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
            intr = ofdm_modulate(make_frame(bits, ic), ic);
            if (scn.channel == ChannelKind::fading && scn.fade_interferer) {
                const PdpProfile pdp = exp_pdp_profile(scn.pdp_taps, scn.pdp_decay);
                intr = apply_multipath(intr, draw_realization(pdp, scn.tap_spacing, rng));
            }
            start = static_cast<std::size_t>(rng.below(to));
        }
        intr = frequency_shift(intr, fc);
        for (std::size_t i = 0; i < tx.samples.size(); ++i)
            tx.samples[i] += cal.gain * intr.samples[start + i];
    }
    add_awgn_var(tx.samples, cal.noise_var, rng);
    td.victim_rx = std::move(tx);
    return td;
}

TrialResult run_trial(const ScenarioConfig& scn, const Calibration& cal, Rng& rng) {
    TrialData td = compose_scenario(scn, cal, rng);
    std::vector<std::uint8_t> rx_bits;
    if (scn.victim == SystemKind::nb) {
        rx_bits = nb_receive(td.victim_rx, scn.nb, td.xi, td.flat_gain, td.n_victim_symbols);
    } else {
        rx_bits = ofdm_demodulate(td.victim_rx, scn.victim_ofdm(), td.csi);
    }
    TrialResult r;
    r.bits = td.truth_bits.size();
    std::uint64_t errs = 0;
    for (std::size_t i = 0; i < td.truth_bits.size(); ++i) errs += rx_bits[i] != td.truth_bits[i];
    r.errors = errs;
    return r;
}

double ofdm_mean_power_theory(const OfdmConfig& cfg) {
    return (1.0 - cfg.beta / 4.0) / (1.0 + cfg.beta) * cfg.n_active() * cfg.sigma_a2;
}

double sir_ofdm_ofdm_theory(const OfdmConfig& cu, const OfdmConfig& pu) {
    return ofdm_mean_power_theory(pu) / ofdm_mean_power_theory(cu);
}

double sir_nb_ofdm_theory(const NbConfig& nb, const OfdmConfig& ofdm, double c) {
    return nb.sigma_b2 * (1.0 - nb.alpha / 4.0) / (ofdm.sigma_a2 / ofdm.t_o()) * c;
}

CEstimate estimate_c_constant(const NbConfig& nb, const OfdmConfig& ofdm, double f_c,
                              int realizations, Rng& rng) {
    ScenarioConfig scn;
    scn.victim = SystemKind::nb;
    scn.interferer = SystemKind::ofdm;
    scn.nb = nb;
    scn.ofdm = ofdm;
    scn.composite_rate = ofdm.sim_rate();

    const int blocks = std::max(4, realizations);
    std::vector<double> inv_c(blocks);
    for (int b = 0; b < blocks; ++b) {
        SampleBuffer sig = [&] {
            Rng r2 = Rng::for_trial(rng.next(), static_cast<std::uint64_t>(b), 0, kCalStream);
            const int mi = bits_per_symbol(ofdm.modulation);
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(400) * ofdm.n_active() * mi);
            for (auto& x : bits) x = static_cast<std::uint8_t>(r2.below(2));
            SampleBuffer s = ofdm_modulate(make_frame(bits, ofdm), ofdm);
            if (realizations > 0) {
                const PdpProfile pdp = exp_pdp_profile(scn.pdp_taps, scn.pdp_decay);
                s = apply_multipath(s, draw_realization(pdp, scn.tap_spacing, r2));
            }
            return s;
        }();
        sig = frequency_shift(sig, -f_c);
        const double rho_i = mf_output_power(sig, nb);
        inv_c[b] = ofdm.sigma_a2 / (ofdm.t_o() * rho_i);
    }
    CEstimate est;
    double mean = 0.0;
    for (double v : inv_c) mean += v;
    mean /= blocks;
    double var = 0.0;
    for (double v : inv_c) var += (v - mean) * (v - mean);
    var /= (blocks > 1 ? blocks - 1 : 1);
    est.c = mean;
    est.std_error = std::sqrt(var / blocks);
    return est;
}

SirBreakdown sir_breakdown(const ScenarioConfig& scn) {
    SirBreakdown out;
    const Calibration cal = calibrate_interferer_gain(scn);
    out.victim_power_measured = cal.victim_ref_power;
    out.interferer_power_measured = cal.gain * cal.gain * cal.interferer_ref_power;
    out.sir_measured_db = to_db(out.victim_power_measured / out.interferer_power_measured);
    if (scn.victim == SystemKind::ofdm && scn.interferer == SystemKind::ofdm) {
        out.sir_theory_db = to_db(sir_ofdm_ofdm_theory(scn.interferer_ofdm(), scn.victim_ofdm()));
    } else if (scn.victim == SystemKind::nb) {
        Rng rng(0xC0157A47);
        const CEstimate c = estimate_c_constant(scn.nb, scn.ofdm, scn.interferer_center_offset(), 0, rng);
        out.c_constant = c.c;
        out.sir_theory_db = to_db(sir_nb_ofdm_theory(scn.nb, scn.ofdm, c.c));
    } else {
        out.sir_theory_db = out.sir_measured_db;
    }
    return out;
}

}  // namespace coexsim
