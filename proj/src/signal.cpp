#include "coexsim/signal.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace coexsim {

namespace {
constexpr double kPi = std::numbers::pi;
}

double raised_cosine_window(double t, const WindowSpec& spec) {
    const double beta = spec.beta;
    const double ts = spec.t_s;
    if (beta < 0.0 || beta >= 1.0 || ts <= 0.0)
        throw std::invalid_argument("raised_cosine_window: bad spec");
    const double total = (1.0 + beta) * ts;
    if (t < 0.0 || t >= total)
        throw std::domain_error("raised_cosine_window: t outside [0,(1+beta)T_s)");
    if (beta == 0.0) return 1.0;
    const double rise = beta * ts;
    if (t < rise) return 0.5 + 0.5 * std::cos(kPi + kPi * t / rise);
    if (t < ts) return 1.0;
    // falling edge written so the window stays continuous at t = T_s
    return 0.5 + 0.5 * std::cos(kPi * (t - ts) / rise);
}

std::vector<double> rrc_taps(double alpha, int span_symbols, int samples_per_symbol) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw std::invalid_argument("rrc_taps: alpha must be in (0,1]");
    if (span_symbols < 8) throw std::invalid_argument("rrc_taps: span_symbols >= 8 required");
    if (samples_per_symbol < 2)
        throw std::invalid_argument("rrc_taps: samples_per_symbol >= 2 required");

    const int half = span_symbols * samples_per_symbol / 2;
    const int len = span_symbols * samples_per_symbol + 1;
    std::vector<double> taps(len);
    const double sing = 1.0 / (4.0 * alpha);  // |t| = T/(4 alpha), t in symbol units
    for (int i = 0; i < len; ++i) {
        const double t = static_cast<double>(i - half) / samples_per_symbol;
        double v;
        if (std::abs(t) < 1e-12) {
            v = 1.0 - alpha + 4.0 * alpha / kPi;
        } else if (std::abs(std::abs(t) - sing) < 1e-9) {
            v = (alpha / std::sqrt(2.0)) *
                ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * alpha)) +
                 (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * alpha)));
        } else {
            v = (std::sin(kPi * t * (1.0 - alpha)) +
                 4.0 * alpha * t * std::cos(kPi * t * (1.0 + alpha))) /
                (kPi * t * (1.0 - (4.0 * alpha * t) * (4.0 * alpha * t)));
        }
        taps[i] = v;
    }
    double energy = 0.0;
    for (double v : taps) energy += v * v;
    const double scale = 1.0 / std::sqrt(energy);
    for (double& v : taps) v *= scale;
    return taps;
}

SampleBuffer frequency_shift(const SampleBuffer& sig, double f) {
    if (std::abs(f) >= sig.sample_rate / 2.0)
        throw std::domain_error("frequency_shift: |f| must be below Nyquist");
    SampleBuffer out;
    out.sample_rate = sig.sample_rate;
    out.samples.resize(sig.samples.size());
    // phase recurrence with periodic renormalization
    const double dphi = 2.0 * kPi * f / sig.sample_rate;
    const cplx step(std::cos(dphi), std::sin(dphi));
    cplx ph(1.0, 0.0);
    for (std::size_t n = 0; n < sig.samples.size(); ++n) {
        out.samples[n] = sig.samples[n] * ph;
        ph *= step;
        if ((n & 0x3FF) == 0x3FF) ph /= std::abs(ph);
    }
    return out;
}

double measure_power(std::span<const cplx> samples) {
    if (samples.empty()) return 0.0;
    double acc = 0.0;
    for (const cplx& s : samples) acc += std::norm(s);
    return acc / static_cast<double>(samples.size());
}

double measure_power(const SampleBuffer& sig) {
    return measure_power(std::span<const cplx>(sig.samples));
}

namespace {

// smallest p/q with p/q == ratio (within tol), q bounded
bool to_rational(double ratio, int max_den, int& p, int& q) {
    for (int den = 1; den <= max_den; ++den) {
        const double num = ratio * den;
        const double r = std::round(num);
        if (std::abs(num - r) < 1e-9 * den && r > 0) {
            p = static_cast<int>(r);
            q = den;
            const int g = std::gcd(p, q);
            p /= g;
            q /= g;
            return true;
        }
    }
    return false;
}

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

SampleBuffer resample(const SampleBuffer& sig, double target_rate) {
    if (target_rate <= 0.0) throw std::invalid_argument("resample: target_rate must be > 0");
    if (target_rate == sig.sample_rate) return sig;
    int up = 0, down = 0;
    if (!to_rational(target_rate / sig.sample_rate, 1 << 14, up, down))
        throw std::invalid_argument("resample: rate ratio is not a representable rational");

    // Kaiser-windowed sinc at the upsampled rate; cutoff at the narrower Nyquist.
    const int taps_per_phase = 24;
    const double cutoff = 0.5 / std::max(up, down);  // cycles per upsampled sample
    const int half = taps_per_phase * up / 2;
    const double kaiser_beta = 10.0;
    auto bessel_i0 = [](double x) {
        double sum = 1.0, term = 1.0;
        for (int k = 1; k < 64; ++k) {
            term *= (x / (2.0 * k)) * (x / (2.0 * k));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum;
    };
    const double i0b = bessel_i0(kaiser_beta);
    std::vector<double> h(2 * half + 1);
    for (int i = 0; i < static_cast<int>(h.size()); ++i) {
        const double n = i - half;
        const double x = n / half;
        const double w = (std::abs(x) <= 1.0) ? bessel_i0(kaiser_beta * std::sqrt(1.0 - x * x)) / i0b : 0.0;
        h[i] = 2.0 * cutoff * sinc(2.0 * cutoff * n) * w * up;
    }

    const std::int64_t n_in = static_cast<std::int64_t>(sig.samples.size());
    const std::int64_t n_out = (n_in * up) / down;
    SampleBuffer out;
    out.sample_rate = sig.sample_rate * up / down;
    out.samples.assign(n_out, cplx(0.0, 0.0));
    // polyphase: output m taken from upsampled index m*down
    for (std::int64_t m = 0; m < n_out; ++m) {
        const std::int64_t u = m * down;  // index on the up-rate grid
        cplx acc(0.0, 0.0);
        // up-rate sample u-k nonzero when (u-k) % up == 0
        const std::int64_t k0 = -half, k1 = half;
        for (std::int64_t k = k0; k <= k1; ++k) {
            const std::int64_t iu = u - k;
            if (iu % up != 0) continue;
            const std::int64_t n = iu / up;
            if (n < 0 || n >= n_in) continue;
            acc += sig.samples[static_cast<std::size_t>(n)] * h[static_cast<std::size_t>(k + half)];
        }
        out.samples[static_cast<std::size_t>(m)] = acc;
    }
    return out;
}

}  // namespace coexsim
