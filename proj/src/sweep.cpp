#include "coexsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace coexsim {

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::f_n: return "f_n";
        case SweepAxis::sir_db: return "sir_db";
        case SweepAxis::beta: return "beta";
        case SweepAxis::nulled_count: return "nulled_count";
        case SweepAxis::cu_subcarriers: return "cu_subcarriers";
        case SweepAxis::eb_no_db: return "eb_no_db";
    }
    return "?";
}

void SweepSpec::validate() const {
    if (grid.empty()) throw std::invalid_argument("sweep: grid must be non-empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw std::invalid_argument("sweep: grid must be strictly increasing");
    scenario.validate();
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value) {
    ScenarioConfig scn = base;
    const bool both_ofdm = scn.victim == SystemKind::ofdm && scn.interferer == SystemKind::ofdm;
    OfdmConfig& cu = both_ofdm ? scn.ofdm2 : scn.ofdm;  // the CU-role system
    switch (axis) {
        case SweepAxis::f_n:
            scn.f_n = value;
            break;
        case SweepAxis::sir_db:
            scn.sir_db = value;
            break;
        case SweepAxis::beta: {
            OfdmConfig next = cu;
            next.beta = value;
            next.active_set = cu.active_set;
            next.validate();
            cu = next;
            break;
        }
        case SweepAxis::nulled_count: {
            const int count = static_cast<int>(std::llround(value));
            // null the edge facing the victim: NB victims sit above the CU's
            // high edge; an OFDM victim sits below the shifted CU band.
            const Edge edge = (scn.victim == SystemKind::nb) ? Edge::high : Edge::low;
            OfdmConfig full = cu;
            full.active_set.resize(full.n_total);
            for (int k = 0; k < full.n_total; ++k) full.active_set[static_cast<std::size_t>(k)] = k;
            cu = null_edge_subcarriers(full, count, edge);
            break;
        }
        case SweepAxis::cu_subcarriers: {
            const int n = static_cast<int>(std::llround(value));
            cu = make_ofdm_config(n, cu.bandwidth(), cu.t_cp * cu.delta_f, cu.beta,
                                  cu.modulation, cu.sigma_a2,
                                  static_cast<int>(std::llround(scn.composite_rate / cu.bandwidth())));
            break;
        }
        case SweepAxis::eb_no_db:
            scn.eb_no_db = value;
            break;
    }
    return scn;
}

namespace {

std::uint64_t bits_per_trial(const ScenarioConfig& scn) {
    if (scn.victim == SystemKind::nb) return 2ULL * scn.symbols_per_trial();
    return static_cast<std::uint64_t>(bits_per_symbol(scn.victim_ofdm().modulation)) *
           scn.victim_ofdm().n_active() * scn.symbols_per_trial();
}

}  // namespace

PointResult run_ber_point(const ScenarioConfig& scn, const StopRule& stop,
                          std::uint64_t seed, std::uint64_t point_index, int threads) {
    PointResult pr;
    Calibration cal;
    try {
        scn.validate();
        cal = calibrate_interferer_gain(scn);
    } catch (const std::exception& e) {
        pr.feasible = false;
        pr.error = e.what();
        return pr;
    }
    if (threads < 1) threads = 1;

    const std::uint64_t bpt = bits_per_trial(scn);
    const std::uint64_t batch_trials = std::max<std::uint64_t>(1, 8192 / bpt);
    constexpr std::uint64_t kWaveBatches = 16;

    std::uint64_t next_trial = 0;
    while (true) {
        // one wave of fixed batches; threads pull batches, results merge in order
        std::vector<TrialResult> slots(kWaveBatches);
        std::atomic<std::uint64_t> cursor{0};
        auto worker = [&] {
            for (;;) {
                const std::uint64_t w = cursor.fetch_add(1);
                if (w >= kWaveBatches) break;
                TrialResult acc;
                for (std::uint64_t t = 0; t < batch_trials; ++t) {
                    const std::uint64_t trial = next_trial + w * batch_trials + t;
                    Rng rng = Rng::for_trial(seed, point_index, trial, 0);
                    const TrialResult r = run_trial(scn, cal, rng);
                    acc.bits += r.bits;
                    acc.errors += r.errors;
                }
                slots[w] = acc;
            }
        };
        std::vector<std::thread> pool;
        const int nthreads = std::min<int>(threads, static_cast<int>(kWaveBatches));
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        for (const TrialResult& s : slots) pr.ber.add_counts(s.bits, s.errors);
        next_trial += kWaveBatches * batch_trials;

        if (pr.ber.bit_errors >= stop.min_errors) break;
        if (pr.ber.bits_total >= stop.bit_budget) break;
    }
    return pr;
}

std::vector<PointResult> run_ber_sweep(const SweepSpec& spec, int threads) {
    spec.validate();
    std::vector<PointResult> out;
    out.reserve(spec.grid.size());
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        ScenarioConfig scn = apply_axis(spec.scenario, spec.axis, spec.grid[i]);
        PointResult pr = run_ber_point(scn, spec.stop, spec.seed, i, threads);
        pr.axis_value = spec.grid[i];
        out.push_back(std::move(pr));
    }
    return out;
}

namespace {

SearchResult search_threshold(const SweepSpec& spec, int threads, double target) {
    SearchResult sr;
    sr.full_curve = run_ber_sweep(spec, threads);
    for (const PointResult& pr : sr.full_curve) {
        if (pr.feasible && meets_target(pr.ber, target)) {
            sr.found = true;
            sr.threshold_value = pr.axis_value;
            sr.ber_at_threshold = pr.ber;
            break;
        }
    }
    return sr;
}

}  // namespace

SearchResult find_min_separation(const SweepSpec& spec, int threads) {
    if (spec.axis != SweepAxis::f_n)
        throw std::invalid_argument("find_min_separation: axis must be f_n");
    return search_threshold(spec, threads, spec.target_ber);
}

SearchResult find_min_nulled(const SweepSpec& spec, int threads) {
    if (spec.axis != SweepAxis::nulled_count)
        throw std::invalid_argument("find_min_nulled: axis must be nulled_count");
    return search_threshold(spec, threads, spec.target_ber);
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<PointResult>& results) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,bits,errors,ber,ci_low,ci_high,status\n",
                  axis_name(spec.axis));
    os << buf;
    for (const PointResult& pr : results) {
        if (!pr.feasible) {
            std::snprintf(buf, sizeof buf, "%.10g,0,0,nan,nan,nan,error:%s\n", pr.axis_value,
                          pr.error.c_str());
            os << buf;
            continue;
        }
        std::snprintf(buf, sizeof buf, "%.10g,%llu,%llu,%.8e,%.8e,%.8e,ok\n", pr.axis_value,
                      static_cast<unsigned long long>(pr.ber.bits_total),
                      static_cast<unsigned long long>(pr.ber.bit_errors), pr.ber.ber,
                      pr.ber.ci_low, pr.ber.ci_high);
        os << buf;
    }
}

std::string version_string() { return "coexsim 1.0.0"; }

namespace {

const char* kind_name(SystemKind k) { return k == SystemKind::nb ? "nb" : "ofdm"; }
const char* chan_name(ChannelKind c) { return c == ChannelKind::awgn ? "awgn" : "fading"; }
const char* ref_name(SirReference r) {
    switch (r) {
        case SirReference::paper: return "paper";
        case SirReference::co_channel: return "co_channel";
        case SirReference::input_power: return "input_power";
    }
    return "?";
}

void manifest_ofdm(std::ostream& os, const char* prefix, const OfdmConfig& c) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%s.n=%d\n%s.n_active=%d\n%s.delta_f=%.10g\n%s.t_cp=%.10g\n%s.beta=%.10g\n"
                  "%s.modulation=%s\n%s.sigma_a2=%.10g\n%s.oversampling=%d\n",
                  prefix, c.n_total, prefix, c.n_active(), prefix, c.delta_f, prefix, c.t_cp,
                  prefix, c.beta, prefix, c.modulation == Modulation::qpsk ? "qpsk" : "bpsk",
                  prefix, c.sigma_a2, prefix, c.oversampling);
    os << buf;
}

}  // namespace

void write_manifest(std::ostream& os, const SweepSpec& spec) {
    char buf[512];
    os << "# run manifest\n";
    std::snprintf(buf, sizeof buf, "version=%s\nname=%s\nseed=%llu\naxis=%s\n",
                  version_string().c_str(), spec.name.c_str(),
                  static_cast<unsigned long long>(spec.seed), axis_name(spec.axis));
    os << buf;
    os << "grid=";
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.10g", i ? "," : "", spec.grid[i]);
        os << buf;
    }
    os << "\n";
    std::snprintf(buf, sizeof buf, "min_errors=%llu\nbit_budget=%llu\ntarget_ber=%.10g\n",
                  static_cast<unsigned long long>(spec.stop.min_errors),
                  static_cast<unsigned long long>(spec.stop.bit_budget), spec.target_ber);
    os << buf;
    const ScenarioConfig& s = spec.scenario;
    std::snprintf(buf, sizeof buf,
                  "victim=%s\ninterferer=%s\nhas_interferer=%d\nchannel=%s\nf_n=%.10g\n"
                  "sir_db=%.10g\neb_no_db=%.10g\nsir_reference=%s\ncomposite_rate=%.10g\n"
                  "literal_fn=%d\nfade_interferer=%d\nsymbols_per_trial=%d\n",
                  kind_name(s.victim), kind_name(s.interferer), s.has_interferer ? 1 : 0,
                  chan_name(s.channel), s.f_n, s.sir_db, s.eb_no_db, ref_name(s.sir_reference),
                  s.composite_rate, s.literal_fn ? 1 : 0, s.fade_interferer ? 1 : 0,
                  s.symbols_per_trial());
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "nb.bw=%.10g\nnb.alpha=%.10g\nnb.sigma_b2=%.10g\nnb.tx_span=%d\nnb.rx_span=%d\n",
                  s.nb.bw_n, s.nb.alpha, s.nb.sigma_b2, s.nb.tx_span, s.nb.rx_span);
    os << buf;
    manifest_ofdm(os, "ofdm", s.ofdm);
    if (s.victim == SystemKind::ofdm && s.interferer == SystemKind::ofdm)
        manifest_ofdm(os, "ofdm2", s.ofdm2);
    std::snprintf(buf, sizeof buf, "pdp_taps=%d\npdp_decay=%.10g\ntap_spacing=%.10g\n",
                  s.pdp_taps, s.pdp_decay, s.tap_spacing);
    os << buf;
}

PsdEstimate welch_psd(const SampleBuffer& sig, int nfft) {
    if (!is_pow2(static_cast<std::size_t>(nfft)))
        throw std::invalid_argument("welch_psd: nfft must be a power of two");
    if (sig.samples.size() < static_cast<std::size_t>(nfft))
        throw std::invalid_argument("welch_psd: signal shorter than nfft");
    std::vector<double> win(static_cast<std::size_t>(nfft));
    for (int n = 0; n < nfft; ++n)
        win[static_cast<std::size_t>(n)] =
            0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / (nfft - 1));
    std::vector<double> acc(static_cast<std::size_t>(nfft), 0.0);
    std::vector<cplx> seg(static_cast<std::size_t>(nfft));
    const std::size_t hop = static_cast<std::size_t>(nfft) / 2;
    std::size_t nseg = 0;
    for (std::size_t start = 0; start + nfft <= sig.samples.size(); start += hop, ++nseg) {
        for (int n = 0; n < nfft; ++n)
            seg[static_cast<std::size_t>(n)] =
                sig.samples[start + static_cast<std::size_t>(n)] * win[static_cast<std::size_t>(n)];
        fft_forward(seg);
        for (int n = 0; n < nfft; ++n) acc[static_cast<std::size_t>(n)] += std::norm(seg[static_cast<std::size_t>(n)]);
    }
    double peak = 0.0;
    for (double v : acc) peak = std::max(peak, v);
    PsdEstimate out;
    out.freq_hz.resize(static_cast<std::size_t>(nfft));
    out.power_db.resize(static_cast<std::size_t>(nfft));
    // fftshift so frequencies ascend
    for (int i = 0; i < nfft; ++i) {
        const int k = (i + nfft / 2) % nfft;        // source bin
        const int f = k < nfft / 2 ? k : k - nfft;  // signed bin
        out.freq_hz[static_cast<std::size_t>(i)] = f * sig.sample_rate / nfft;
        out.power_db[static_cast<std::size_t>(i)] =
            10.0 * std::log10(std::max(acc[static_cast<std::size_t>(k)] / peak, 1e-300));
    }
    return out;
}

PsdEstimate emit_psd_ofdm(const OfdmConfig& cfg, int averaging) {
    if (averaging < 1) throw std::invalid_argument("emit_psd: averaging >= 1");
    Rng rng(0x95D0F00DULL);
    const int m = bits_per_symbol(cfg.modulation);
    const int n_sym = std::max(64, averaging);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_sym) * cfg.n_active() * m);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
    const SampleBuffer sig = ofdm_modulate(make_frame(bits, cfg), cfg);
    return welch_psd(sig, 4096);
}

PsdEstimate emit_psd_nb(const NbConfig& cfg, double sample_rate, int averaging) {
    if (averaging < 1) throw std::invalid_argument("emit_psd: averaging >= 1");
    Rng rng(0x95D0F00EULL);
    const int n_sym = std::max(256, averaging);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_sym) * 2);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
    const SampleBuffer sig =
        nb_modulate(nb_map_bits(bits, cfg.sigma_b2), cfg, sample_rate, 0.0);
    return welch_psd(sig, 4096);
}

void write_psd_csv(std::ostream& os, const PsdEstimate& psd) {
    os << "freq_hz,power_db\n";
    char buf[128];
    for (std::size_t i = 0; i < psd.freq_hz.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.6f\n", psd.freq_hz[i], psd.power_db[i]);
        os << buf;
    }
}

}  // namespace coexsim
