#include "coexsim/nb.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coexsim {

namespace {
constexpr double kPi = std::numbers::pi;

// RRC point evaluation, t in symbol units; singular points via analytic limits.
double rrc_point(double t, double alpha) {
    if (std::abs(t) < 1e-12) return 1.0 - alpha + 4.0 * alpha / kPi;
    const double sing = 1.0 / (4.0 * alpha);
    if (std::abs(std::abs(t) - sing) < 1e-9) {
        return (alpha / std::sqrt(2.0)) *
               ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * alpha)) +
                (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * alpha)));
    }
    return (std::sin(kPi * t * (1.0 - alpha)) + 4.0 * alpha * t * std::cos(kPi * t * (1.0 + alpha))) /
           (kPi * t * (1.0 - (4.0 * alpha * t) * (4.0 * alpha * t)));
}

}  // namespace

int NbConfig::samples_per_symbol(double sample_rate) const {
    const double m = sample_rate / symbol_rate();
    if (std::abs(m - std::round(m)) > 1e-6)
        throw std::invalid_argument("NbConfig: sample_rate is not an integer multiple of the symbol rate");
    return static_cast<int>(std::round(m));
}

void NbConfig::validate() const {
    if (bw_n <= 0.0) throw std::invalid_argument("NbConfig: bw_n > 0");
    if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("NbConfig: alpha in (0,1]");
    if (sigma_b2 <= 0.0) throw std::invalid_argument("NbConfig: sigma_b2 > 0");
    if (tx_span < 4 || rx_span < 4) throw std::invalid_argument("NbConfig: spans too short");
}

std::vector<cplx> nb_map_bits(std::span<const std::uint8_t> bits, double sigma_b2) {
    return map_bits(bits, Modulation::qpsk, sigma_b2);
}

namespace detail {

std::vector<double> shifted_pulse(const NbConfig& cfg, double sample_rate, double xi) {
    const int m = cfg.samples_per_symbol(sample_rate);
    const double t = cfg.symbol_period();
    if (xi < 0.0 || xi >= t) throw std::invalid_argument("nb: xi must be in [0, T)");
    const double shift = xi * sample_rate;  // samples, [0, m)
    const int span = cfg.tx_span;
    const int len = span * m + m + 1;
    std::vector<double> q(len, 0.0);
    const double half = span / 2.0;
    double energy = 0.0;
    for (int i = 0; i < len; ++i) {
        const double ts = (i - shift) / m - half;  // symbol units
        if (ts < -half || ts > half) continue;
        q[i] = rrc_point(ts, cfg.alpha);
        energy += q[i] * q[i];
    }
    const double s = 1.0 / std::sqrt(energy);
    for (double& v : q) v *= s;
    return q;
}

}  // namespace detail

SampleBuffer nb_modulate(std::span<const cplx> symbols, const NbConfig& cfg,
                         double sample_rate, double xi) {
    cfg.validate();
    const int m = cfg.samples_per_symbol(sample_rate);
    const auto q = detail::shifted_pulse(cfg, sample_rate, xi);
    SampleBuffer out;
    out.sample_rate = sample_rate;
    out.samples.assign((symbols.size() - 1) * m + q.size(), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        const cplx b = symbols[k];
        cplx* dst = out.samples.data() + k * m;
        for (std::size_t i = 0; i < q.size(); ++i) dst[i] += b * q[i];
    }
    return out;
}

std::vector<cplx> nb_decision_points(const SampleBuffer& rx, const NbConfig& cfg,
                                     double xi, int n_symbols) {
    const int m = cfg.samples_per_symbol(rx.sample_rate);
    NbConfig rx_cfg = cfg;
    rx_cfg.tx_span = cfg.rx_span;  // receive-side truncation
    const auto q = detail::shifted_pulse(rx_cfg, rx.sample_rate, xi);
    // transmit pulse may be truncated differently; align correlation windows
    const int tx_len = cfg.tx_span * m + m + 1;
    const int off = (tx_len - static_cast<int>(q.size())) / 2;
    std::vector<cplx> out(n_symbols);
    for (int k = 0; k < n_symbols; ++k) {
        const std::int64_t base = static_cast<std::int64_t>(k) * m + off;
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            const std::int64_t n = base + static_cast<std::int64_t>(i);
            if (n < 0 || n >= static_cast<std::int64_t>(rx.samples.size())) continue;
            acc += rx.samples[static_cast<std::size_t>(n)] * q[i];
        }
        out[k] = acc;
    }
    return out;
}

std::vector<std::uint8_t> nb_receive(const SampleBuffer& rx, const NbConfig& cfg,
                                     double xi, cplx flat_gain, int n_symbols) {
    if (std::norm(flat_gain) == 0.0) throw std::invalid_argument("nb_receive: zero gain");
    auto dec = nb_decision_points(rx, cfg, xi, n_symbols);
    for (cplx& d : dec) d /= flat_gain;
    return demap_hard(dec, Modulation::qpsk);
}

SampleBuffer nb_matched_filter(const SampleBuffer& rx, const NbConfig& cfg) {
    const int m = cfg.samples_per_symbol(rx.sample_rate);
    const auto taps = rrc_taps(cfg.alpha, cfg.rx_span, m);
    SampleBuffer out;
    out.sample_rate = rx.sample_rate;
    out.samples = fft_convolve(rx.samples, taps);
    return out;
}

double nb_mf_power_theory(const NbConfig& cfg) { return cfg.sigma_b2 * (1.0 - cfg.alpha / 4.0); }

}  // namespace coexsim
