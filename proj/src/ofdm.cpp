#include "coexsim/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coexsim {

namespace {

int exact_samples(double duration, double rate, const char* what) {
    const double x = duration * rate;
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-6)
        throw std::invalid_argument(std::string("OfdmConfig: ") + what +
                                    " does not land on the sample grid");
    return static_cast<int>(r);
}

}  // namespace

int OfdmConfig::useful_samples() const { return n_total * oversampling; }
int OfdmConfig::cp_samples() const { return exact_samples(t_cp, sim_rate(), "t_cp"); }
int OfdmConfig::postfix_samples() const { return exact_samples(t_p(), sim_rate(), "t_p"); }
int OfdmConfig::symbol_samples() const {
    return useful_samples() + cp_samples() + postfix_samples();
}

void OfdmConfig::validate() const {
    if (n_total < 2 || !is_pow2(static_cast<std::size_t>(n_total)))
        throw std::invalid_argument("OfdmConfig: n_total must be a power of two >= 2");
    if (active_set.empty()) throw std::invalid_argument("OfdmConfig: empty active set");
    if (!std::is_sorted(active_set.begin(), active_set.end()))
        throw std::invalid_argument("OfdmConfig: active_set must be sorted");
    for (int k : active_set)
        if (k < 0 || k >= n_total) throw std::invalid_argument("OfdmConfig: active index out of range");
    if (delta_f <= 0.0) throw std::invalid_argument("OfdmConfig: delta_f > 0");
    if (t_cp < 0.0) throw std::invalid_argument("OfdmConfig: t_cp >= 0");
    if (beta < 0.0 || beta >= 1.0) throw std::invalid_argument("OfdmConfig: 0 <= beta < 1");
    if (sigma_a2 <= 0.0) throw std::invalid_argument("OfdmConfig: sigma_a2 > 0");
    if (oversampling < 1 || !is_pow2(static_cast<std::size_t>(oversampling)))
        throw std::invalid_argument("OfdmConfig: oversampling must be a power of two >= 1");
    (void)cp_samples();
    (void)postfix_samples();
}

OfdmConfig make_ofdm_config(int n_total, double bandwidth_hz, double cp_fraction,
                            double beta, Modulation mod, double sigma_a2, int oversampling) {
    OfdmConfig c;
    c.n_total = n_total;
    c.delta_f = bandwidth_hz / n_total;
    c.t_cp = cp_fraction / c.delta_f;
    c.beta = beta;
    c.modulation = mod;
    c.sigma_a2 = sigma_a2;
    c.oversampling = oversampling;
    c.active_set.resize(n_total);
    for (int k = 0; k < n_total; ++k) c.active_set[k] = k;
    c.validate();
    return c;
}

std::vector<cplx> map_bits(std::span<const std::uint8_t> bits, Modulation mod, double sigma_a2) {
    const int m = bits_per_symbol(mod);
    if (bits.size() % m != 0)
        throw std::invalid_argument("map_bits: bit count not divisible by bits/symbol");
    std::vector<cplx> out(bits.size() / m);
    if (mod == Modulation::bpsk) {
        const double a = std::sqrt(sigma_a2);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = cplx(bits[i] ? -a : a, 0.0);
    } else {
        const double a = std::sqrt(sigma_a2 / 2.0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double re = bits[2 * i] ? -a : a;
            const double im = bits[2 * i + 1] ? -a : a;
            out[i] = cplx(re, im);
        }
    }
    return out;
}

std::vector<std::uint8_t> demap_hard(std::span<const cplx> points, Modulation mod) {
    std::vector<std::uint8_t> bits;
    if (mod == Modulation::bpsk) {
        bits.resize(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) bits[i] = points[i].real() < 0.0 ? 1 : 0;
    } else {
        bits.resize(2 * points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            bits[2 * i] = points[i].real() < 0.0 ? 1 : 0;
            bits[2 * i + 1] = points[i].imag() < 0.0 ? 1 : 0;
        }
    }
    return bits;
}

OfdmFrame make_frame(std::span<const std::uint8_t> bits, const OfdmConfig& cfg) {
    cfg.validate();
    const int m = bits_per_symbol(cfg.modulation);
    const int per_sym = m * cfg.n_active();
    if (bits.size() % per_sym != 0)
        throw std::invalid_argument("make_frame: bits must fill whole OFDM symbols");
    OfdmFrame f;
    f.bits.assign(bits.begin(), bits.end());
    const std::size_t n_sym = bits.size() / per_sym;
    f.data_symbols.resize(n_sym);
    for (std::size_t s = 0; s < n_sym; ++s) {
        auto pts = map_bits(bits.subspan(s * per_sym, per_sym), cfg.modulation, cfg.sigma_a2);
        f.data_symbols[s] = std::move(pts);
    }
    return f;
}

SampleBuffer ofdm_modulate(const OfdmFrame& frame, const OfdmConfig& cfg) {
    cfg.validate();
    const int nl = cfg.useful_samples();
    const int ncp = cfg.cp_samples();
    const int np = cfg.postfix_samples();
    const int nsym = nl + ncp + np;
    const int nts = nl + ncp;  // T_s worth of samples

    // window evaluated at sample instants over [0, T_o)
    std::vector<double> w(nsym, 1.0);
    if (np > 0) {
        const WindowSpec ws{cfg.beta, static_cast<double>(nts) / cfg.sim_rate()};
        for (int n = 0; n < nsym; ++n)
            w[n] = raised_cosine_window(n / cfg.sim_rate(), ws);
    }

    SampleBuffer out;
    out.sample_rate = cfg.sim_rate();
    out.samples.resize(frame.data_symbols.size() * nsym);
    std::vector<cplx> spec(nl);
    for (std::size_t s = 0; s < frame.data_symbols.size(); ++s) {
        const auto& pts = frame.data_symbols[s];
        if (static_cast<int>(pts.size()) != cfg.n_active())
            throw std::invalid_argument("ofdm_modulate: frame symbols must be indexed by the active set");
        std::fill(spec.begin(), spec.end(), cplx(0.0, 0.0));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const int k = cfg.active_set[i] - cfg.n_total / 2;      // centered index
            const int bin = (k % nl + nl) % nl;
            spec[bin] = pts[i];
        }
        fft_inverse(spec);  // unnormalized: x[n] = sum_k A_k e^{+j2pi k n/nl}
        cplx* dst = out.samples.data() + s * nsym;
        for (int n = 0; n < ncp; ++n) dst[n] = spec[nl - ncp + n] * w[n];
        for (int n = 0; n < nl; ++n) dst[ncp + n] = spec[n] * w[ncp + n];
        for (int n = 0; n < np; ++n) dst[ncp + nl + n] = spec[n] * w[ncp + nl + n];
    }
    return out;
}

std::vector<std::uint8_t> ofdm_demodulate(const SampleBuffer& rx, const OfdmConfig& cfg,
                                          std::span<const cplx> csi) {
    cfg.validate();
    if (csi.size() != static_cast<std::size_t>(cfg.n_active()))
        throw std::invalid_argument("ofdm_demodulate: csi size must match the active set");
    for (const cplx& g : csi)
        if (std::norm(g) == 0.0)
            throw std::invalid_argument("ofdm_demodulate: zero csi gain on an active subcarrier");
    const int nl = cfg.useful_samples();
    const int ncp = cfg.cp_samples();
    const int nsym = cfg.symbol_samples();
    if (rx.samples.size() % nsym != 0)
        throw std::invalid_argument("ofdm_demodulate: buffer must hold whole symbols");
    const std::size_t n_sym = rx.samples.size() / nsym;

    std::vector<std::uint8_t> bits;
    bits.reserve(n_sym * cfg.n_active() * bits_per_symbol(cfg.modulation));
    std::vector<cplx> spec(nl);
    std::vector<cplx> eq(cfg.n_active());
    const double inv_nl = 1.0 / nl;
    for (std::size_t s = 0; s < n_sym; ++s) {
        const cplx* src = rx.samples.data() + s * nsym + ncp;
        std::copy(src, src + nl, spec.begin());
        fft_forward(spec);
        for (int i = 0; i < cfg.n_active(); ++i) {
            const int k = cfg.active_set[i] - cfg.n_total / 2;
            const int bin = (k % nl + nl) % nl;
            eq[i] = spec[bin] * inv_nl / csi[i];
        }
        auto b = demap_hard(eq, cfg.modulation);
        bits.insert(bits.end(), b.begin(), b.end());
    }
    return bits;
}

OfdmConfig null_edge_subcarriers(const OfdmConfig& cfg, int count, Edge edge) {
    if (count < 0 || count >= cfg.n_active())
        throw std::invalid_argument("null_edge_subcarriers: count must be < N_u");
    OfdmConfig out = cfg;
    if (edge == Edge::high)
        out.active_set.erase(out.active_set.end() - count, out.active_set.end());
    else
        out.active_set.erase(out.active_set.begin(), out.active_set.begin() + count);
    return out;
}

double papr(std::span<const cplx> symbol_core) {
    if (symbol_core.empty()) throw std::invalid_argument("papr: empty input");
    double peak = 0.0, mean = 0.0;
    for (const cplx& s : symbol_core) {
        const double p = std::norm(s);
        peak = std::max(peak, p);
        mean += p;
    }
    mean /= static_cast<double>(symbol_core.size());
    if (mean == 0.0) throw std::invalid_argument("papr: zero mean power");
    return peak / mean;
}

std::vector<double> papr_per_symbol(const SampleBuffer& sig, const OfdmConfig& cfg) {
    const int nsym = cfg.symbol_samples();
    const int nts = cfg.useful_samples() + cfg.cp_samples();
    const std::size_t n = sig.samples.size() / nsym;
    std::vector<double> out(n);
    for (std::size_t s = 0; s < n; ++s)
        out[s] = papr(std::span<const cplx>(sig.samples.data() + s * nsym, nts));
    return out;
}

double spectral_efficiency(const OfdmConfig& cfg) {
    const double m = bits_per_symbol(cfg.modulation);
    return m * cfg.n_active() / (cfg.t_s() * (1.0 + cfg.beta)) / (cfg.n_total * cfg.delta_f);
}

}  // namespace coexsim
